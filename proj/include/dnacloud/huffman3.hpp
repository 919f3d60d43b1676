// Deterministic ternary Huffman code over the 256 byte values.
//
// The tree is built over 257 symbols: every byte with weight 1 plus a
// zero-weight filler so the 3-way merges come out even. Codeword lengths land
// on 5 and 6 trits; codes are then assigned canonically (shorter lengths
// first, ties by byte value) which makes decode a pair of range lookups
// instead of a trie walk.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dnacloud/base.hpp"

namespace dnacloud {

class Huffman3Table {
public:
    static Huffman3Table build();
    static const Huffman3Table& instance();

    std::uint8_t codeword_length(std::uint8_t byte) const {
        return len_[byte];
    }
    std::span<const std::uint8_t> codeword(std::uint8_t byte) const {
        return {trits_[byte], len_[byte]};
    }

    // trits per byte, exact: total_code_trits() / 256
    std::uint32_t total_code_trits() const { return total_trits_; }
    double avg_codeword_length() const { return total_trits_ / 256.0; }

    std::uint16_t count5() const { return n5_; }
    std::uint16_t count6() const { return n6_; }

    bool operator==(const Huffman3Table& other) const;

    // Decodes one codeword starting at trits[0]. Returns the number of trits
    // consumed (5 or 6) and sets byte, or returns 0 when fewer trits are
    // available than the codeword needs. Throws invalid_prefix for a 6-trit
    // path outside the code.
    std::size_t decode_one(const std::uint8_t* trits, std::size_t available,
                           std::uint8_t& byte) const;

private:
    Huffman3Table() = default;
    void assign_canonical(const std::uint8_t* lengths);

    std::uint8_t len_[256] = {};
    std::uint8_t trits_[256][6] = {};
    std::uint16_t n5_ = 0;
    std::uint16_t n6_ = 0;
    std::uint16_t first6_ = 0;  // = 3 * n5_, first canonical 6-trit value
    std::uint8_t sym5_[243] = {};
    std::uint8_t sym6_[32] = {};
    std::uint32_t total_trits_ = 0;
};

// Concatenated codewords of `data`, appended to `out`.
void encode_bytes_append(std::span<const std::uint8_t> data,
                         const Huffman3Table& table, TritSeq& out);

TritSeq encode_bytes(std::span<const std::uint8_t> data,
                     const Huffman3Table& table);

struct Huffman3Decoded {
    std::vector<std::uint8_t> bytes;
    std::size_t consumed = 0;  // trits
    TritSeq leftover;          // 0..5 trailing trits
};

// Greedy prefix decode from the front; the tail that does not form a complete
// codeword is returned, not an error.
Huffman3Decoded decode_trits(std::span<const std::uint8_t> trits,
                             const Huffman3Table& table);

// Incremental decoder carrying a partial codeword across update() calls.
class Huffman3Decoder {
public:
    explicit Huffman3Decoder(const Huffman3Table& table) : table_(&table) {}

    void update(std::span<const std::uint8_t> trits,
                std::vector<std::uint8_t>& out);
    std::span<const std::uint8_t> leftover() const {
        return {carry_, carry_len_};
    }
    void reset() { carry_len_ = 0; }

private:
    const Huffman3Table* table_;
    std::uint8_t carry_[8] = {};
    std::size_t carry_len_ = 0;
};

}  // namespace dnacloud
