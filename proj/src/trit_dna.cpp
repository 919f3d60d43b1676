#include "dnacloud/trit_dna.hpp"

#include "dnacloud/errors.hpp"
#include "dnacloud/kernels.hpp"

namespace dnacloud {

void trits_to_dna_append(std::span<const std::uint8_t> trits,
                         std::uint8_t& prev, BaseSeq& out) {
    const std::size_t start = out.size();
    out.resize(start + trits.size());
    kernels::active().trits_to_bases(trits.data(), trits.size(), prev,
                                     out.data() + start);
    if (!trits.empty()) prev = out.back();
}

BaseSeq trits_to_dna(std::span<const std::uint8_t> trits, std::uint8_t prev) {
    BaseSeq out;
    trits_to_dna_append(trits, prev, out);
    return out;
}

TritSeq dna_to_trits(std::span<const std::uint8_t> bases, std::uint8_t prev) {
    TritSeq out(bases.size());
    const std::size_t bad = kernels::active().bases_to_trits(
        bases.data(), bases.size(), prev, out.data());
    if (bad != bases.size())
        throw CodecError(Errc::homopolymer_violation,
                         "adjacent equal bases at position " +
                             std::to_string(bad),
                         bad);
    return out;
}

TritSeq int_to_trits(std::uint64_t n, unsigned width) {
    TritSeq out(width);
    std::uint64_t v = n;
    for (unsigned i = width; i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(v % 3);
        v /= 3;
    }
    if (v != 0)
        throw CodecError(Errc::trit_overflow,
                         std::to_string(n) + " does not fit in " +
                             std::to_string(width) + " trits");
    return out;
}

std::uint64_t trits_to_int(std::span<const std::uint8_t> trits) {
    std::uint64_t v = 0;
    for (const std::uint8_t t : trits) v = v * 3 + t;
    return v;
}

}  // namespace dnacloud
