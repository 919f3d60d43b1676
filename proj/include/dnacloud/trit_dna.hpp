// Rotation coding between trit strings and homopolymer-free DNA, plus base-3
// integer helpers. next_base = (prev + trit + 1) mod 4 in A,C,G,T cycle
// order, so the new base never equals the previous one and every choice of
// previous base admits all three trits.

#pragma once

#include <cstdint>
#include <span>

#include "dnacloud/base.hpp"

namespace dnacloud {

// Encodes after `prev`; appends to `out` and advances `prev` to the last
// emitted base so segments can be chained.
void trits_to_dna_append(std::span<const std::uint8_t> trits,
                         std::uint8_t& prev, BaseSeq& out);

BaseSeq trits_to_dna(std::span<const std::uint8_t> trits, std::uint8_t prev);

// Inverse of trits_to_dna. Throws homopolymer_violation (with the offending
// position) when a base equals its predecessor.
TritSeq dna_to_trits(std::span<const std::uint8_t> bases, std::uint8_t prev);

// Big-endian base-3 digits, left-padded with zeros to exactly `width`.
// Throws trit_overflow when n >= 3^width.
TritSeq int_to_trits(std::uint64_t n, unsigned width);

// Inverse of int_to_trits; valid for widths up to 40 trits.
std::uint64_t trits_to_int(std::span<const std::uint8_t> trits);

}  // namespace dnacloud
