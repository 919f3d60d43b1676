// File -> DNA string -> 117-base oligos, as two chainable streaming stages.
//
// Stage 1 (DnaStreamEncoder): Huffman-code incoming bytes to trits, rotation-
// code the trits to bases, then close the stream with zero-trit padding and a
// 20-trit big-endian footer holding the payload length. Padding brings the
// total length to a multiple of 25 and, in pipeline use, to at least 100
// bases so even an empty file yields one oligo.
//
// Stage 2 (OligoSegmenter): slice the base stream into 100-base payloads
// stepped by 25 (each interior base lands in four oligos), attach the 15-trit
// index (2-trit file id, 12-trit chunk number, parity trit) rotation-coded
// from the payload's last base, and add the flanks. Only the trailing
// window is retained between calls.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "dnacloud/base.hpp"
#include "dnacloud/huffman3.hpp"

namespace dnacloud {

inline constexpr std::size_t kDefaultBufferSize = 1u << 20;

struct EncoderConfig {
    std::size_t buffer_size = kDefaultBufferSize;
    std::uint8_t file_id = 0;  // 0..8, two trits
    // Chunk numbers wrap modulo 3^12 instead of failing once the oligo count
    // exceeds the index capacity. Wrapped pools are write-only: reassembly
    // cannot distinguish reused chunk numbers.
    bool allow_index_overflow = false;
};

struct IndexInfo {
    std::uint8_t id = 0;
    std::uint32_t chunk = 0;
};

// Throws input_too_large when the 20-trit footer cannot name `payload_len`
// (anything past 3^20 - 1 bases).
void check_footer_capacity(std::uint64_t payload_len);

std::array<std::uint8_t, kIndexTrits> encode_index(std::uint8_t id,
                                                   std::uint32_t chunk);

// Decodes the 15-base index region given the base preceding it. Returns
// nullopt when the region is not rotation-decodable or the parity trit does
// not match.
std::optional<IndexInfo> decode_index(const std::uint8_t* bases, std::uint8_t prev);

using BaseSink = std::function<void(std::span<const std::uint8_t>)>;
using OligoSink = std::function<void(const Oligo&)>;

class DnaStreamEncoder {
public:
    explicit DnaStreamEncoder(const Huffman3Table& table) : table_(&table) {}

    // Throws input_too_large once the payload outgrows what the footer can
    // name (3^20 - 1 bases).
    void update(std::span<const std::uint8_t> bytes, const BaseSink& out);

    // Emits pad + footer; returns the total DNA length.
    std::uint64_t finish(const BaseSink& out,
                         std::size_t min_total = kMinDnaLength);

    std::uint64_t payload_length() const { return payload_len_; }

private:
    const Huffman3Table* table_;
    std::uint8_t prev_ = kBaseA;
    std::uint64_t payload_len_ = 0;
    TritSeq trit_scratch_;
    BaseSeq base_scratch_;
};

class OligoSegmenter {
public:
    OligoSegmenter(const EncoderConfig& config, OligoSink out);

    void update(std::span<const std::uint8_t> bases);

    // Requires the stream to close on a 25-base boundary with at least 100
    // bases total (too_short otherwise). Returns the oligo count.
    std::uint64_t finish();

    std::uint64_t emitted() const { return next_chunk_; }

private:
    void emit_ready();

    std::uint8_t file_id_;
    bool allow_overflow_;
    OligoSink out_;
    BaseSeq window_;
    std::uint64_t window_start_ = 0;  // absolute position of window_[0]
    std::uint64_t next_chunk_ = 0;
    std::uint64_t total_ = 0;
};

// Builds one oligo: flank, payload copy, rotation-coded index, flank.
Oligo make_oligo(const std::uint8_t* payload, std::uint8_t file_id,
                 std::uint32_t chunk_number);

// Whole-stream conveniences over the classes above.
BaseSeq encode_stream_to_dna(std::istream& input, const EncoderConfig& config);

// Pads `payload` with the minimal run of zero trits so that the final length
// is a multiple of 25 (and >= min_total), then appends the 20-trit length
// footer, all rotation-coded from the payload's last base (A when empty).
BaseSeq append_length_footer(BaseSeq payload, std::size_t min_total = 0);

std::vector<Oligo> segment_into_oligos(std::span<const std::uint8_t> dna,
                                       const EncoderConfig& config);

struct EncodeSummary {
    std::uint64_t file_bytes = 0;
    std::uint64_t dna_length = 0;
    std::uint64_t oligo_count = 0;
};

// Full encode pipeline, reading `input` in buffer_size slices. The sink
// receives oligos in ascending chunk order.
EncodeSummary encode_pipeline(std::istream& input, const EncoderConfig& config,
                              const OligoSink& sink);

}  // namespace dnacloud
