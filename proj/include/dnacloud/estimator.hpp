// Storage projections for a file and biochemical properties for a pool.

#pragma once

#include <cstdint>
#include <span>

#include "dnacloud/base.hpp"
#include "dnacloud/huffman3.hpp"

namespace dnacloud {

struct MemoryEstimate {
    std::uint64_t file_size = 0;           // bytes
    std::uint64_t dna_string_length = 0;   // bases
    std::uint64_t free_memory_required = 0;  // bytes: .dnac size + one buffer
    double dna_mass_grams = 0.0;
};

// Grams of DNA for a string of `dna_string_length` bases: 325 g/mol per
// nucleotide, four-fold synthesis of every base.
double dna_mass_grams(std::uint64_t dna_string_length);

// Salt-adjusted long-oligo melting temperature in degrees C:
// 81.5 + 16.6*log10(Na+ molar) + 0.41*GC% - 600/length.
double melting_temperature(double gc_fraction, double salt_mM,
                           std::size_t length);

// dna_string_length follows the real pipeline shape: ceil(size * avg
// codeword length) + 20-trit footer, rounded up to a multiple of 25 and to
// the 100-base floor.
MemoryEstimate estimate_memory(std::uint64_t file_size,
                               const Huffman3Table& table);

struct BiochemEstimate {
    double gc_fraction = 0.0;
    double melting_temperature_c = 0.0;
    double total_cost = 0.0;
    std::uint64_t total_bases = 0;
};

// Tm per oligo: 81.5 + 16.6*log10(Na+ molar) + 0.41*GC% - 600/length,
// averaged over the pool; cost covers every synthesized base, flanks and
// index included. Throws empty_pool; salt_mM must be positive.
BiochemEstimate estimate_biochem(std::span<const Oligo> oligos, double salt_mM,
                                 double cost_per_base);

}  // namespace dnacloud
