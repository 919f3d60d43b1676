// Desk-scale stand-in for synthesis and sequencing: duplicate, drop, and
// point-mutate oligos under a seeded mt19937_64, then measure whether the
// decoder gets the file back.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dnacloud/base.hpp"
#include "dnacloud/encoder.hpp"

namespace dnacloud {

struct ChannelConfig {
    double drop_rate = 0.0;          // per oligo copy
    double substitution_rate = 0.0;  // per base of each surviving copy
    double duplication_factor = 1.0; // copies per oligo (rounded)
    std::uint64_t seed = 0;
};

// Deterministic under a fixed seed. Uniform draws come from
// (mt19937_64() >> 11) * 2^-53 so realizations are reproducible bit for bit.
std::vector<Oligo> apply_channel(std::span<const Oligo> oligos,
                                 const ChannelConfig& config);

struct TrialReport {
    std::uint64_t seed = 0;
    bool recovered = false;
    std::uint64_t discarded_oligos = 0;
    std::uint64_t vote_conflicts = 0;
    std::string failure;  // decoder error text, empty when recovered
};

// encode -> segment -> channel -> reassemble -> decode; recovered means
// byte-exact equality with the input. Decoder errors land in the report.
TrialReport run_trial(std::span<const std::uint8_t> file_bytes,
                      const ChannelConfig& config,
                      const EncoderConfig& encoder_config = {});

// Substream seed for trial `index` derived from the base seed (splitmix64).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

inline constexpr char kTrialCsvHeader[] =
    "seed,drop_rate,sub_rate,dup_factor,recovered,discarded,conflicts";

std::string trial_csv_row(const TrialReport& report,
                          const ChannelConfig& config);

}  // namespace dnacloud
