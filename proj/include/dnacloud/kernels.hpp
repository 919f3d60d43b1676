// Byte-wide inner loops behind the codec, in two interchangeable flavors:
// a scalar reference and an AVX2 variant picked at runtime. Higher-level
// modules call through active(); tests pin each flavor with select() and
// check they agree bit for bit.
//
// Conventions shared by both flavors:
//  - bases and trits are one byte each (codes 0..3 / 0..2)
//  - vote planes are four parallel u8 arrays, one per base value, counts
//    saturate at 255
//  - functions returning std::size_t report the first offending index, or n
//    when the whole input is clean; output bytes at or beyond that index are
//    unspecified

#pragma once

#include <cstddef>
#include <cstdint>

namespace dnacloud::kernels {

struct ResolveResult {
    std::size_t fail_pos;    // == n when all positions resolved
    std::uint8_t fail_kind;  // 0 none, 1 zero coverage, 2 tied plurality
    std::uint64_t conflicts; // positions in [0, fail_pos) with a dissenting vote
};

struct Ops {
    const char* name;

    // out[i] = (prev_i + trits[i] + 1) & 3 with prev_0 = prev; returns nothing,
    // the caller reads out[n-1] to thread the rotation state.
    void (*trits_to_bases)(const std::uint8_t* trits, std::size_t n,
                           std::uint8_t prev, std::uint8_t* out);

    // out[i] = ((bases[i] - prev_i) & 3) - 1; returns the first i whose
    // difference is 0 (adjacent equal bases), or n.
    std::size_t (*bases_to_trits)(const std::uint8_t* bases, std::size_t n,
                                  std::uint8_t prev, std::uint8_t* out);

    // First i with bases[i] == prev_i, or n. Pass prev = 0xFF to skip the
    // leading comparison.
    std::size_t (*find_adjacent_equal)(const std::uint8_t* bases, std::size_t n,
                                       std::uint8_t prev);

    // Number of C/G codes.
    std::uint64_t (*count_gc)(const std::uint8_t* bases, std::size_t n);

    // planes[bases[i]][i] += 1 (saturating) for each i.
    void (*vote_accumulate)(std::uint8_t* p0, std::uint8_t* p1, std::uint8_t* p2,
                            std::uint8_t* p3, const std::uint8_t* bases,
                            std::size_t n);

    // out[i] = unique argmax over the four plane counts at i. Stops at the
    // first position with zero coverage or a tied maximum.
    ResolveResult (*vote_resolve)(const std::uint8_t* p0, const std::uint8_t* p1,
                                  const std::uint8_t* p2, const std::uint8_t* p3,
                                  std::size_t n, std::uint8_t* out);

    // Maps 'A','C','G','T' to 0..3; returns the first invalid index, or n.
    std::size_t (*ascii_to_codes)(const char* text, std::size_t n,
                                  std::uint8_t* out);

    void (*codes_to_ascii)(const std::uint8_t* codes, std::size_t n, char* out);
};

const Ops& scalar();

// nullptr when the build or the CPU lacks AVX2.
const Ops* avx2();

// Best available flavor (AVX2 when supported, scalar otherwise).
const Ops& active();

// Override the active flavor; used by the equivalence tests.
void select(const Ops& ops);

}  // namespace dnacloud::kernels
