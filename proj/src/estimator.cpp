#include "dnacloud/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "dnacloud/encoder.hpp"
#include "dnacloud/errors.hpp"
#include "dnacloud/kernels.hpp"

namespace dnacloud {

namespace {

constexpr double kAvogadro = 6.022e23;
constexpr double kNucleotideGramsPerMole = 325.0;
constexpr double kSynthesisRedundancy = 4.0;  // each base lands in ~4 oligos

}  // namespace

double dna_mass_grams(std::uint64_t dna_string_length) {
    return kSynthesisRedundancy * kNucleotideGramsPerMole *
           static_cast<double>(dna_string_length) / kAvogadro;
}

double melting_temperature(double gc_fraction, double salt_mM,
                           std::size_t length) {
    return 81.5 + 16.6 * std::log10(salt_mM / 1000.0) +
           0.41 * (100.0 * gc_fraction) -
           600.0 / static_cast<double>(length);
}

MemoryEstimate estimate_memory(std::uint64_t file_size,
                               const Huffman3Table& table) {
    MemoryEstimate est;
    est.file_size = file_size;

    const unsigned __int128 trits =
        (static_cast<unsigned __int128>(file_size) * table.total_code_trits() +
         255) /
        256;
    unsigned __int128 total = trits + kFooterTrits;
    total = (total + 24) / 25 * 25;
    if (total < kMinDnaLength) total = kMinDnaLength;
    est.dna_string_length = static_cast<std::uint64_t>(total);
    est.dna_mass_grams = dna_mass_grams(est.dna_string_length);

    const std::uint64_t oligos = est.dna_string_length / kSegmentStep - 3;
    est.free_memory_required = 2 + 121 * oligos + kDefaultBufferSize;
    return est;
}

BiochemEstimate estimate_biochem(std::span<const Oligo> oligos, double salt_mM,
                                 double cost_per_base) {
    if (oligos.empty())
        throw CodecError(Errc::empty_pool, "no oligos to estimate");
    if (!(salt_mM > 0.0))
        throw std::invalid_argument("salt concentration must be positive");
    if (cost_per_base < 0.0)
        throw std::invalid_argument("cost per base must be non-negative");

    std::uint64_t gc_total = 0;
    double tm_sum = 0.0;
    for (const Oligo& oligo : oligos) {
        const std::uint64_t gc =
            kernels::active().count_gc(oligo.bases, kOligoLength);
        gc_total += gc;
        const double gc_fraction =
            static_cast<double>(gc) / static_cast<double>(kOligoLength);
        tm_sum += melting_temperature(gc_fraction, salt_mM, kOligoLength);
    }

    BiochemEstimate est;
    est.total_bases = oligos.size() * kOligoLength;
    est.gc_fraction =
        static_cast<double>(gc_total) / static_cast<double>(est.total_bases);
    est.melting_temperature_c = tm_sum / static_cast<double>(oligos.size());
    est.total_cost = cost_per_base * static_cast<double>(est.total_bases);
    return est;
}

}  // namespace dnacloud
