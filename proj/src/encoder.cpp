#include "dnacloud/encoder.hpp"

#include <cassert>
#include <cstring>
#include <stdexcept>

#include "dnacloud/errors.hpp"
#include "dnacloud/kernels.hpp"
#include "dnacloud/trit_dna.hpp"

namespace dnacloud {

void check_footer_capacity(std::uint64_t payload_len) {
    if (payload_len > kMaxDnaLength)
        throw CodecError(Errc::input_too_large,
                         "payload DNA of " + std::to_string(payload_len) +
                             " bases exceeds the footer limit of " +
                             std::to_string(kMaxDnaLength));
}

std::array<std::uint8_t, kIndexTrits> encode_index(std::uint8_t id,
                                                   std::uint32_t chunk) {
    assert(id <= kMaxFileId);
    assert(chunk < kChunkCapacity);
    std::array<std::uint8_t, kIndexTrits> trits;
    trits[0] = static_cast<std::uint8_t>(id / 3);
    trits[1] = static_cast<std::uint8_t>(id % 3);
    std::uint32_t v = chunk;
    for (std::size_t i = kIndexIdTrits + kIndexChunkTrits; i-- > kIndexIdTrits;) {
        trits[i] = static_cast<std::uint8_t>(v % 3);
        v /= 3;
    }
    unsigned sum = 0;
    for (std::size_t i = 0; i < kIndexTrits - 1; ++i) sum += trits[i];
    trits[kIndexTrits - 1] = static_cast<std::uint8_t>(sum % 3);
    return trits;
}

std::optional<IndexInfo> decode_index(const std::uint8_t* bases,
                                      std::uint8_t prev) {
    std::uint8_t trits[kIndexTrits];
    const std::size_t bad = kernels::active().bases_to_trits(
        bases, kIndexTrits, prev, trits);
    if (bad != kIndexTrits) return std::nullopt;
    unsigned sum = 0;
    for (std::size_t i = 0; i < kIndexTrits - 1; ++i) sum += trits[i];
    if (sum % 3 != trits[kIndexTrits - 1]) return std::nullopt;
    IndexInfo info;
    info.id = static_cast<std::uint8_t>(trits[0] * 3 + trits[1]);
    std::uint32_t chunk = 0;
    for (std::size_t i = kIndexIdTrits; i < kIndexIdTrits + kIndexChunkTrits; ++i)
        chunk = chunk * 3 + trits[i];
    info.chunk = chunk;
    return info;
}

void DnaStreamEncoder::update(std::span<const std::uint8_t> bytes,
                              const BaseSink& out) {
    if (bytes.empty()) return;
    trit_scratch_.clear();
    encode_bytes_append(bytes, *table_, trit_scratch_);
    payload_len_ += trit_scratch_.size();
    check_footer_capacity(payload_len_);
    base_scratch_.clear();
    trits_to_dna_append(trit_scratch_, prev_, base_scratch_);
    out(base_scratch_);
}

std::uint64_t DnaStreamEncoder::finish(const BaseSink& out,
                                       std::size_t min_total) {
    std::uint64_t pad = (25 - (payload_len_ + kFooterTrits) % 25) % 25;
    while (payload_len_ + pad + kFooterTrits < min_total) pad += 25;

    trit_scratch_.assign(pad, 0);
    const TritSeq footer = int_to_trits(payload_len_, kFooterTrits);
    trit_scratch_.insert(trit_scratch_.end(), footer.begin(), footer.end());
    base_scratch_.clear();
    trits_to_dna_append(trit_scratch_, prev_, base_scratch_);
    out(base_scratch_);
    return payload_len_ + pad + kFooterTrits;
}

OligoSegmenter::OligoSegmenter(const EncoderConfig& config, OligoSink out)
    : file_id_(config.file_id),
      allow_overflow_(config.allow_index_overflow),
      out_(std::move(out)) {
    if (config.file_id > kMaxFileId)
        throw std::invalid_argument("file_id must be 0..8");
}

Oligo make_oligo(const std::uint8_t* payload, std::uint8_t file_id,
                 std::uint32_t chunk_number) {
    Oligo oligo;
    oligo.position = chunk_number;
    std::memcpy(oligo.bases + 1, payload, kSegmentLength);

    const auto index_trits = encode_index(file_id, chunk_number);
    std::uint8_t prev = payload[kSegmentLength - 1];
    kernels::active().trits_to_bases(index_trits.data(), kIndexTrits, prev,
                                     oligo.bases + 1 + kSegmentLength);

    // flanks: A or T in front, G or C behind, never equal to the neighbor
    oligo.bases[0] = (payload[0] == kBaseA) ? kBaseT : kBaseA;
    const std::uint8_t last_index = oligo.bases[kOligoLength - 2];
    oligo.bases[kOligoLength - 1] = (last_index == kBaseG) ? kBaseC : kBaseG;
    return oligo;
}

void OligoSegmenter::emit_ready() {
    while (true) {
        const std::uint64_t start = kSegmentStep * next_chunk_;
        assert(start >= window_start_);
        const std::uint64_t offset = start - window_start_;
        if (window_.size() < offset + kSegmentLength) break;
        if (next_chunk_ >= kChunkCapacity && !allow_overflow_)
            throw CodecError(
                Errc::input_too_large,
                "oligo count exceeds the 12-trit index capacity of " +
                    std::to_string(kChunkCapacity) +
                    " (use --force-index-overflow to wrap)");
        const std::uint32_t stored =
            static_cast<std::uint32_t>(next_chunk_ % kChunkCapacity);
        out_(make_oligo(window_.data() + offset, file_id_, stored));
        ++next_chunk_;
    }
    const std::uint64_t keep_from = kSegmentStep * next_chunk_;
    if (keep_from > window_start_) {
        const std::size_t drop = static_cast<std::size_t>(
            std::min<std::uint64_t>(keep_from - window_start_, window_.size()));
        window_.erase(window_.begin(), window_.begin() + drop);
        window_start_ += drop;
    }
}

void OligoSegmenter::update(std::span<const std::uint8_t> bases) {
    window_.insert(window_.end(), bases.begin(), bases.end());
    total_ += bases.size();
    emit_ready();
}

std::uint64_t OligoSegmenter::finish() {
    if (total_ < kSegmentLength)
        throw CodecError(Errc::too_short,
                         "DNA string of " + std::to_string(total_) +
                             " bases is shorter than one 100-base segment");
    if (total_ % kSegmentStep != 0)
        throw std::invalid_argument("DNA length must be a multiple of 25");
    assert(window_start_ + window_.size() == total_);
    assert(next_chunk_ == total_ / kSegmentStep - 3);
    return next_chunk_;
}

BaseSeq encode_stream_to_dna(std::istream& input, const EncoderConfig& config) {
    if (config.buffer_size == 0)
        throw std::invalid_argument("buffer_size must be at least 1");
    BaseSeq dna;
    const BaseSink sink = [&dna](std::span<const std::uint8_t> bases) {
        dna.insert(dna.end(), bases.begin(), bases.end());
    };
    DnaStreamEncoder encoder(Huffman3Table::instance());
    std::vector<std::uint8_t> buffer(config.buffer_size);
    while (input) {
        input.read(reinterpret_cast<char*>(buffer.data()),
                   static_cast<std::streamsize>(buffer.size()));
        const std::size_t got = static_cast<std::size_t>(input.gcount());
        if (input.bad())
            throw CodecError(Errc::io_failure, "read failure on input stream");
        encoder.update({buffer.data(), got}, sink);
        if (got < buffer.size()) break;
    }
    encoder.finish(sink, kMinDnaLength);
    return dna;
}

BaseSeq append_length_footer(BaseSeq payload, std::size_t min_total) {
    BaseSeq out = std::move(payload);
    const std::uint64_t len = out.size();
    check_footer_capacity(len);
    std::uint64_t pad = (25 - (len + kFooterTrits) % 25) % 25;
    while (len + pad + kFooterTrits < min_total) pad += 25;
    TritSeq tail(pad, 0);
    const TritSeq footer = int_to_trits(len, kFooterTrits);
    tail.insert(tail.end(), footer.begin(), footer.end());
    std::uint8_t prev = out.empty() ? kBaseA : out.back();
    trits_to_dna_append(tail, prev, out);
    return out;
}

std::vector<Oligo> segment_into_oligos(std::span<const std::uint8_t> dna,
                                       const EncoderConfig& config) {
    if (dna.size() < kSegmentLength)
        throw CodecError(Errc::too_short,
                         "DNA string of " + std::to_string(dna.size()) +
                             " bases is shorter than one 100-base segment");
    if (dna.size() % kSegmentStep != 0)
        throw std::invalid_argument("DNA length must be a multiple of 25");
    std::vector<Oligo> oligos;
    oligos.reserve(dna.size() / kSegmentStep);
    OligoSegmenter segmenter(config, [&oligos](const Oligo& o) {
        oligos.push_back(o);
    });
    segmenter.update(dna);
    segmenter.finish();
    return oligos;
}

EncodeSummary encode_pipeline(std::istream& input, const EncoderConfig& config,
                              const OligoSink& sink) {
    if (config.buffer_size == 0)
        throw std::invalid_argument("buffer_size must be at least 1");
    EncodeSummary summary;
    OligoSegmenter segmenter(config, sink);
    const BaseSink to_segmenter = [&segmenter](
                                      std::span<const std::uint8_t> bases) {
        segmenter.update(bases);
    };
    DnaStreamEncoder encoder(Huffman3Table::instance());
    std::vector<std::uint8_t> buffer(config.buffer_size);
    while (input) {
        input.read(reinterpret_cast<char*>(buffer.data()),
                   static_cast<std::streamsize>(buffer.size()));
        const std::size_t got = static_cast<std::size_t>(input.gcount());
        if (input.bad())
            throw CodecError(Errc::io_failure, "read failure on input stream");
        summary.file_bytes += got;
        encoder.update({buffer.data(), got}, to_segmenter);
        if (got < buffer.size()) break;
    }
    summary.dna_length = encoder.finish(to_segmenter, kMinDnaLength);
    summary.oligo_count = segmenter.finish();
    return summary;
}

}  // namespace dnacloud
