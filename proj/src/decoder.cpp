#include "dnacloud/decoder.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>

#include "dnacloud/errors.hpp"
#include "dnacloud/format.hpp"
#include "dnacloud/kernels.hpp"
#include "dnacloud/trit_dna.hpp"

namespace dnacloud {

namespace {

enum class Classified { accepted, bad_index, wrong_id };

Classified classify(const Oligo& oligo, std::uint8_t expect_id,
                    std::uint32_t& chunk) {
    const std::uint8_t* payload = oligo.bases + 1;
    const std::uint8_t prev = payload[kSegmentLength - 1];
    const auto info = decode_index(payload + kSegmentLength, prev);
    if (!info) return Classified::bad_index;
    if (info->id != expect_id) return Classified::wrong_id;
    chunk = info->chunk;
    return Classified::accepted;
}

[[noreturn]] void throw_resolve_failure(const kernels::ResolveResult& r,
                                        std::uint64_t base_position) {
    const std::uint64_t pos = base_position + r.fail_pos;
    if (r.fail_kind == 1)
        throw CodecError(Errc::coverage_gap,
                         "no surviving coverage at DNA position " +
                             std::to_string(pos),
                         pos);
    throw CodecError(Errc::vote_tie,
                     "tied vote at DNA position " + std::to_string(pos), pos);
}

}  // namespace

std::vector<Oligo> parse_dnac_stream(std::istream& input) {
    return read_dnac(input);
}

void Reassembler::add(const Oligo& oligo) {
    ++stats_.oligos_seen;
    std::uint32_t chunk = 0;
    switch (classify(oligo, expect_id_, chunk)) {
        case Classified::bad_index:
            ++stats_.discarded_index;
            return;
        case Classified::wrong_id:
            ++stats_.discarded_wrong_id;
            return;
        case Classified::accepted:
            break;
    }
    const std::size_t start = std::size_t{chunk} * kSegmentStep;
    const std::size_t need = start + kSegmentLength;
    // invariant: plane bytes at and beyond used_ are zero
    if (need > used_) {
        if (need > planes_[0].size())
            for (auto& plane : planes_) plane.resize(need, 0);
        used_ = need;
    }
    kernels::active().vote_accumulate(
        planes_[0].data() + start, planes_[1].data() + start,
        planes_[2].data() + start, planes_[3].data() + start, oligo.bases + 1,
        kSegmentLength);
    max_chunk_ = std::max<std::uint64_t>(max_chunk_, chunk);
    any_accepted_ = true;
}

BaseSeq Reassembler::finish() {
    if (!any_accepted_) {
        if (stats_.discarded_wrong_id > 0)
            throw CodecError(Errc::wrong_file_id,
                             "no oligo carried the expected file id");
        throw CodecError(Errc::coverage_gap, "no usable oligos", 0);
    }
    const std::size_t total =
        static_cast<std::size_t>((max_chunk_ + 4) * kSegmentStep);
    assert(total == used_);
    BaseSeq dna(total);
    const kernels::ResolveResult r = kernels::active().vote_resolve(
        planes_[0].data(), planes_[1].data(), planes_[2].data(),
        planes_[3].data(), total, dna.data());
    stats_.vote_conflicts = r.conflicts;
    if (r.fail_kind != 0) throw_resolve_failure(r, 0);
    return dna;
}

void Reassembler::reset() {
    for (auto& plane : planes_)
        std::memset(plane.data(), 0, used_);
    used_ = 0;
    max_chunk_ = 0;
    any_accepted_ = false;
    stats_ = {};
}

BaseSeq reassemble_dna(std::span<const Oligo> oligos,
                       std::uint8_t expect_file_id, ReassemblyStats* stats) {
    Reassembler reassembler(expect_file_id);
    for (const Oligo& oligo : oligos) reassembler.add(oligo);
    try {
        BaseSeq dna = reassembler.finish();
        if (stats) *stats = reassembler.stats();
        return dna;
    } catch (...) {
        if (stats) *stats = reassembler.stats();
        throw;
    }
}

void StreamingReassembler::flush_below(std::uint64_t abs_pos, bool definite) {
    if (abs_pos <= window_start_) return;
    const std::uint64_t resolve_end = std::min(abs_pos, covered_end_);
    if (resolve_end > window_start_) {
        const std::size_t n =
            static_cast<std::size_t>(resolve_end - window_start_);
        resolved_.resize(n);
        const kernels::ResolveResult r = kernels::active().vote_resolve(
            planes_[0].data(), planes_[1].data(), planes_[2].data(),
            planes_[3].data(), n, resolved_.data());
        stats_.vote_conflicts += r.conflicts;
        if (r.fail_kind != 0) {
            // a later oligo of an unsorted stream could still fix this
            // position, so only the final flush may call it for real
            if (!definite)
                throw CodecError(Errc::out_of_order,
                                 "window failed to resolve; stream may be "
                                 "unsorted",
                                 window_start_ + r.fail_pos);
            throw_resolve_failure(r, window_start_);
        }
        out_(resolved_);
        for (auto& plane : planes_)
            plane.erase(plane.begin(), plane.begin() + static_cast<long>(n));
        window_start_ = resolve_end;
    }
    if (abs_pos > covered_end_ && covered_end_ > 0) {
        if (!definite)
            throw CodecError(Errc::out_of_order,
                             "coverage hole at DNA position " +
                                 std::to_string(covered_end_) +
                                 "; stream may be unsorted",
                             covered_end_);
        throw CodecError(Errc::coverage_gap,
                         "no surviving coverage at DNA position " +
                             std::to_string(covered_end_),
                         covered_end_);
    }
}

void StreamingReassembler::add(const Oligo& oligo) {
    ++stats_.oligos_seen;
    std::uint32_t chunk = 0;
    switch (classify(oligo, expect_id_, chunk)) {
        case Classified::bad_index:
            ++stats_.discarded_index;
            return;
        case Classified::wrong_id:
            ++stats_.discarded_wrong_id;
            return;
        case Classified::accepted:
            break;
    }
    const std::uint64_t start = std::uint64_t{chunk} * kSegmentStep;
    if (start < window_start_)
        throw CodecError(Errc::out_of_order,
                         "chunk " + std::to_string(chunk) +
                             " begins before the flushed boundary",
                         chunk);
    flush_below(start, /*definite=*/false);
    const std::size_t offset = static_cast<std::size_t>(start - window_start_);
    const std::size_t need = offset + kSegmentLength;
    if (need > planes_[0].size())
        for (auto& plane : planes_) plane.resize(need, 0);
    high_water_ = std::max(high_water_, planes_[0].size());
    kernels::active().vote_accumulate(
        planes_[0].data() + offset, planes_[1].data() + offset,
        planes_[2].data() + offset, planes_[3].data() + offset,
        oligo.bases + 1, kSegmentLength);
    covered_end_ = std::max(covered_end_, start + kSegmentLength);
    any_accepted_ = true;
}

void StreamingReassembler::finish() {
    if (!any_accepted_) {
        if (stats_.discarded_wrong_id > 0)
            throw CodecError(Errc::wrong_file_id,
                             "no oligo carried the expected file id");
        throw CodecError(Errc::coverage_gap, "no usable oligos", 0);
    }
    flush_below(covered_end_, /*definite=*/true);
}

std::uint64_t decode_dna_to_bytes(std::span<const std::uint8_t> dna,
                                  const Huffman3Table& table,
                                  const ByteSink& sink) {
    if (dna.size() < kSegmentStep || dna.size() % kSegmentStep != 0)
        throw std::invalid_argument(
            "DNA length must be a positive multiple of 25");

    // footer first: the last 20 trits name the payload length
    std::uint8_t footer_trits[kFooterTrits];
    const std::uint8_t footer_prev = dna[dna.size() - kFooterTrits - 1];
    if (kernels::active().bases_to_trits(dna.data() + dna.size() - kFooterTrits,
                                         kFooterTrits, footer_prev,
                                         footer_trits) != kFooterTrits)
        throw CodecError(Errc::homopolymer_violation,
                         "adjacent equal bases inside the footer");
    const std::uint64_t payload_len =
        trits_to_int({footer_trits, kFooterTrits});
    if (payload_len > dna.size() - kFooterTrits)
        throw CodecError(Errc::bad_footer,
                         "footer claims " + std::to_string(payload_len) +
                             " payload bases but only " +
                             std::to_string(dna.size() - kFooterTrits) +
                             " precede it");

    // pad region between payload and footer must decode to zero trits
    const std::size_t pad_len =
        dna.size() - kFooterTrits - static_cast<std::size_t>(payload_len);
    TritSeq scratch;
    std::uint64_t written = 0;
    Huffman3Decoder decoder(table);
    std::vector<std::uint8_t> bytes;
    std::uint8_t prev = kBaseA;
    std::size_t pos = 0;
    constexpr std::size_t kBlock = 1u << 16;
    while (pos < payload_len) {
        const std::size_t n =
            std::min<std::size_t>(kBlock, static_cast<std::size_t>(payload_len) - pos);
        scratch.resize(n);
        const std::size_t bad = kernels::active().bases_to_trits(
            dna.data() + pos, n, prev, scratch.data());
        if (bad != n)
            throw CodecError(Errc::homopolymer_violation,
                             "adjacent equal bases at DNA position " +
                                 std::to_string(pos + bad),
                             pos + bad);
        prev = dna[pos + n - 1];
        bytes.clear();
        decoder.update(scratch, bytes);
        written += bytes.size();
        sink(bytes);
        pos += n;
    }
    if (!decoder.leftover().empty())
        throw CodecError(Errc::dangling_trits,
                         std::to_string(decoder.leftover().size()) +
                             " trits left after the last codeword");

    scratch.resize(pad_len);
    if (pad_len > 0) {
        const std::size_t bad = kernels::active().bases_to_trits(
            dna.data() + pos, pad_len, prev, scratch.data());
        if (bad != pad_len)
            throw CodecError(Errc::homopolymer_violation,
                             "adjacent equal bases at DNA position " +
                                 std::to_string(pos + bad),
                             pos + bad);
        for (std::size_t i = 0; i < pad_len; ++i)
            if (scratch[i] != 0)
                throw CodecError(Errc::bad_footer,
                                 "pad region carries a nonzero trit at DNA "
                                 "position " +
                                     std::to_string(pos + i),
                                 pos + i);
    }
    return written;
}

}  // namespace dnacloud
