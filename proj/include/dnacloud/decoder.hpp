// Oligos -> DNA string -> original bytes.
//
// Every payload base is voted at its absolute position (25 * chunk number +
// offset); plurality wins, ties and empty positions are hard errors. Oligos
// whose index region fails to decode or fails parity are discarded but
// counted. The footer drives the final truncation: the last 20 trits name
// the payload length, the zero-trit pad between payload and footer is
// verified, and only the payload is Huffman-decoded.

#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <vector>

#include "dnacloud/base.hpp"
#include "dnacloud/encoder.hpp"
#include "dnacloud/huffman3.hpp"

namespace dnacloud {

// Reads a whole .dnac container; oligo positions are file ordinals.
std::vector<Oligo> parse_dnac_stream(std::istream& input);

struct ReassemblyStats {
    std::uint64_t oligos_seen = 0;
    std::uint64_t discarded_index = 0;     // undecodable index or bad parity
    std::uint64_t discarded_wrong_id = 0;  // parity fine, different file id
    std::uint64_t vote_conflicts = 0;      // positions with a dissenting vote
    std::uint64_t accepted() const {
        return oligos_seen - discarded_index - discarded_wrong_id;
    }
};

// Order-independent reassembly over an in-memory vote table.
class Reassembler {
public:
    explicit Reassembler(std::uint8_t expect_file_id)
        : expect_id_(expect_file_id) {}

    void add(const Oligo& oligo);

    // Resolves every position of the 25*(max_chunk+4)-base string.
    // Throws wrong_file_id / coverage_gap / vote_tie; stats() stays valid.
    BaseSeq finish();

    const ReassemblyStats& stats() const { return stats_; }

    // Clears votes for reuse without releasing capacity.
    void reset();

private:
    std::uint8_t expect_id_;
    bool any_accepted_ = false;
    std::uint64_t max_chunk_ = 0;
    std::size_t used_ = 0;  // high-water extent of the planes
    std::vector<std::uint8_t> planes_[4];
    ReassemblyStats stats_;
};

BaseSeq reassemble_dna(std::span<const Oligo> oligos,
                       std::uint8_t expect_file_id,
                       ReassemblyStats* stats = nullptr);

// Windowed reassembly for chunk-sorted streams: once an oligo with chunk k
// arrives, positions below 25k are resolved and flushed, so the vote window
// never exceeds a few segment spans. Throws out_of_order whenever a single
// sorted pass cannot conclude (chunk regression, coverage hole, or a window
// that fails to resolve); callers fall back to the in-memory Reassembler,
// whose verdict is definite.
class StreamingReassembler {
public:
    StreamingReassembler(std::uint8_t expect_file_id, BaseSink out)
        : expect_id_(expect_file_id), out_(std::move(out)) {}

    void add(const Oligo& oligo);
    void finish();

    const ReassemblyStats& stats() const { return stats_; }
    std::size_t window_high_water() const { return high_water_; }

private:
    void flush_below(std::uint64_t abs_pos, bool definite);

    std::uint8_t expect_id_;
    BaseSink out_;
    bool any_accepted_ = false;
    std::uint64_t window_start_ = 0;
    std::uint64_t covered_end_ = 0;  // absolute end of voted positions
    std::size_t high_water_ = 0;
    std::vector<std::uint8_t> planes_[4];
    BaseSeq resolved_;
    ReassemblyStats stats_;
};

using ByteSink = std::function<void(std::span<const std::uint8_t>)>;

// Requires len(dna) % 25 == 0 and len >= 25. Returns bytes written.
// Throws bad_footer / dangling_trits / homopolymer_violation / invalid_prefix.
std::uint64_t decode_dna_to_bytes(std::span<const std::uint8_t> dna,
                                  const Huffman3Table& table,
                                  const ByteSink& sink);

}  // namespace dnacloud
