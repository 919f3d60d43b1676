#include "dnacloud/channel_sim.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "dnacloud/decoder.hpp"
#include "dnacloud/errors.hpp"

namespace dnacloud {

namespace {

inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Oligo> apply_channel(std::span<const Oligo> oligos,
                                 const ChannelConfig& config) {
    std::mt19937_64 rng(config.seed);
    const long copies_per_oligo = std::lround(config.duplication_factor);
    std::vector<Oligo> out;
    out.reserve(oligos.size() * static_cast<std::size_t>(
                                    copies_per_oligo > 0 ? copies_per_oligo : 0));
    for (const Oligo& oligo : oligos) {
        for (long c = 0; c < copies_per_oligo; ++c) {
            if (unit_double(rng) < config.drop_rate) continue;
            Oligo copy = oligo;
            if (config.substitution_rate > 0.0) {
                for (std::size_t i = 0; i < kOligoLength; ++i) {
                    if (unit_double(rng) < config.substitution_rate) {
                        const std::uint8_t shift =
                            static_cast<std::uint8_t>(rng() % 3);
                        copy.bases[i] =
                            static_cast<std::uint8_t>((copy.bases[i] + 1 + shift) & 3);
                    }
                }
            }
            out.push_back(copy);
        }
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t z = base_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrialReport run_trial(std::span<const std::uint8_t> file_bytes,
                      const ChannelConfig& config,
                      const EncoderConfig& encoder_config) {
    TrialReport report;
    report.seed = config.seed;

    std::vector<Oligo> oligos;
    {
        OligoSegmenter segmenter(encoder_config, [&oligos](const Oligo& o) {
            oligos.push_back(o);
        });
        DnaStreamEncoder encoder(Huffman3Table::instance());
        const BaseSink sink = [&segmenter](std::span<const std::uint8_t> b) {
            segmenter.update(b);
        };
        encoder.update(file_bytes, sink);
        encoder.finish(sink, kMinDnaLength);
        segmenter.finish();
    }

    const std::vector<Oligo> degraded = apply_channel(oligos, config);

    Reassembler reassembler(encoder_config.file_id);
    for (const Oligo& oligo : degraded) reassembler.add(oligo);
    std::vector<std::uint8_t> decoded;
    try {
        const BaseSeq dna = reassembler.finish();
        decode_dna_to_bytes(dna, Huffman3Table::instance(),
                            [&decoded](std::span<const std::uint8_t> b) {
                                decoded.insert(decoded.end(), b.begin(), b.end());
                            });
        report.recovered = decoded.size() == file_bytes.size() &&
                           std::equal(decoded.begin(), decoded.end(),
                                      file_bytes.begin());
        if (!report.recovered) report.failure = "decoded bytes differ";
    } catch (const CodecError& e) {
        report.recovered = false;
        report.failure = e.what();
    }
    const ReassemblyStats& stats = reassembler.stats();
    report.discarded_oligos = stats.discarded_index + stats.discarded_wrong_id;
    report.vote_conflicts = stats.vote_conflicts;
    return report;
}

std::string trial_csv_row(const TrialReport& report,
                          const ChannelConfig& config) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%llu,%g,%g,%g,%d,%llu,%llu",
                  static_cast<unsigned long long>(report.seed),
                  config.drop_rate, config.substitution_rate,
                  config.duplication_factor, report.recovered ? 1 : 0,
                  static_cast<unsigned long long>(report.discarded_oligos),
                  static_cast<unsigned long long>(report.vote_conflicts));
    return buf;
}

}  // namespace dnacloud
