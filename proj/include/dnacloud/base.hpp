// Core alphabet and sequence types shared by every module.
//
// Bases are stored as codes 0..3 in the cycle order A -> C -> G -> T so that
// the rotation code is plain modular arithmetic: next = (prev + trit + 1) & 3.
// ASCII 'A','C','G','T' appears only at I/O boundaries.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dnacloud {

inline constexpr std::uint8_t kBaseA = 0;
inline constexpr std::uint8_t kBaseC = 1;
inline constexpr std::uint8_t kBaseG = 2;
inline constexpr std::uint8_t kBaseT = 3;

// trit values 0..2
using TritSeq = std::vector<std::uint8_t>;
// base codes 0..3
using BaseSeq = std::vector<std::uint8_t>;

inline constexpr char kBaseChars[4] = {'A', 'C', 'G', 'T'};

inline char base_to_char(std::uint8_t code) { return kBaseChars[code & 3]; }

// Returns 0..3, or 0xFF for a byte outside {A,C,G,T}.
inline std::uint8_t base_from_char(char c) {
    switch (c) {
        case 'A': return kBaseA;
        case 'C': return kBaseC;
        case 'G': return kBaseG;
        case 'T': return kBaseT;
        default: return 0xFF;
    }
}

// Fixed oligo geometry: flank + 100-base payload + 15-base index + flank.
inline constexpr std::size_t kSegmentLength = 100;
inline constexpr std::size_t kSegmentStep = 25;
inline constexpr std::size_t kIndexTrits = 15;
inline constexpr std::size_t kIndexIdTrits = 2;
inline constexpr std::size_t kIndexChunkTrits = 12;
inline constexpr std::size_t kOligoLength = 117;
inline constexpr std::size_t kFooterTrits = 20;

// Smallest DNA string the segmenter can cover with oligos; the encode
// pipeline pads up to this so every file, however small, yields a chunk.
inline constexpr std::size_t kMinDnaLength = kSegmentLength;

// 3^12: one more than the largest chunk number a 12-trit index can hold.
inline constexpr std::uint64_t kChunkCapacity = 531441;
// 3^20 - 1: the largest payload length the 20-trit footer can represent.
inline constexpr std::uint64_t kMaxDnaLength = 3486784400ULL;

inline constexpr std::uint8_t kMaxFileId = 8;  // 2 trits: 0..8

struct Oligo {
    // codes 0..3; layout [flank | payload(100) | index(15) | flank]
    std::uint8_t bases[kOligoLength];
    // chunk number when produced by the encoder, file ordinal when parsed
    std::uint32_t position = 0;
};

inline bool operator==(const Oligo& a, const Oligo& b) {
    for (std::size_t i = 0; i < kOligoLength; ++i)
        if (a.bases[i] != b.bases[i]) return false;
    return a.position == b.position;
}

}  // namespace dnacloud
