// dnacloud: file <-> DNA oligo pool codec with estimators and a channel
// simulator.
//
// Exit codes: 0 success, 2 usage or missing input, 3 corrupt or foreign
// data, 4 unresolved reassembly (tied vote / coverage gap), 5 capacity
// limits, 1 anything else.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnacloud/base.hpp"
#include "dnacloud/channel_sim.hpp"
#include "dnacloud/decoder.hpp"
#include "dnacloud/encoder.hpp"
#include "dnacloud/errors.hpp"
#include "dnacloud/estimator.hpp"
#include "dnacloud/format.hpp"
#include "dnacloud/kernels.hpp"

namespace fs = std::filesystem;
using namespace dnacloud;

namespace {

int exit_code_for(const CodecError& e) {
    switch (e.code()) {
        case Errc::malformed_container:
        case Errc::bad_oligo:
        case Errc::bad_footer:
        case Errc::dangling_trits:
        case Errc::homopolymer_violation:
        case Errc::invalid_prefix:
        case Errc::wrong_file_id:
            return 3;
        case Errc::coverage_gap:
        case Errc::vote_tie:
            return 4;
        case Errc::input_too_large:
        case Errc::too_short:
        case Errc::trit_overflow:
            return 5;
        case Errc::io_failure:
        case Errc::empty_pool:
        case Errc::out_of_order:
            return 1;
    }
    return 1;
}

std::string human_size(std::uint64_t bytes) {
    char buf[64];
    if (bytes < 1024) {
        std::snprintf(buf, sizeof(buf), "%" PRIu64 " bytes", bytes);
        return buf;
    }
    const char* units[] = {"KiB", "MiB", "GiB", "TiB", "PiB"};
    double v = static_cast<double>(bytes);
    int u = -1;
    while (v >= 1024.0 && u < 4) {
        v /= 1024.0;
        ++u;
    }
    std::snprintf(buf, sizeof(buf), "%" PRIu64 " bytes (%.1f %s)", bytes, v,
                  units[u]);
    return buf;
}

bool require_input_file(const std::string& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        std::cerr << "dnacloud: input file not found: " << path << "\n";
        return false;
    }
    return true;
}

struct OutputFile {
    // removes the file unless commit() was called, so failed runs leave
    // nothing behind
    explicit OutputFile(std::string path)
        : path_(std::move(path)),
          stream_(path_, std::ios::binary | std::ios::trunc) {}
    ~OutputFile() {
        stream_.close();
        if (!committed_) {
            std::error_code ec;
            fs::remove(path_, ec);
        }
    }
    bool ok() const { return static_cast<bool>(stream_); }
    std::ostream& stream() { return stream_; }
    void commit() {
        stream_.flush();
        committed_ = static_cast<bool>(stream_);
    }

    std::string path_;
    std::ofstream stream_;
    bool committed_ = false;
};

struct CommonOpts {
    std::string input;
    std::string output;
    std::size_t buffer_size = kDefaultBufferSize;
    unsigned file_id = 0;
    bool machine = false;
    bool force_index_overflow = false;
};

int cmd_encode(const CommonOpts& opt) {
    if (!require_input_file(opt.input)) return 2;
    const std::string out_path =
        opt.output.empty() ? opt.input + ".dnac" : opt.output;

    std::ifstream in(opt.input, std::ios::binary);
    if (!in) {
        std::cerr << "dnacloud: cannot open " << opt.input << "\n";
        return 2;
    }
    OutputFile out(out_path);
    if (!out.ok()) {
        std::cerr << "dnacloud: cannot create " << out_path << "\n";
        return 1;
    }

    EncoderConfig config;
    config.buffer_size = opt.buffer_size;
    config.file_id = static_cast<std::uint8_t>(opt.file_id);
    config.allow_index_overflow = opt.force_index_overflow;

    DnacWriter writer(out.stream());
    const EncodeSummary summary = encode_pipeline(
        in, config, [&writer](const Oligo& o) { writer.push(o); });
    writer.finish();
    out.commit();
    if (!out.committed_) {
        std::cerr << "dnacloud: write failure on " << out_path << "\n";
        return 1;
    }

    if (opt.machine) {
        std::cout << "file_size=" << summary.file_bytes << "\n"
                  << "dna_length=" << summary.dna_length << "\n"
                  << "oligo_count=" << summary.oligo_count << "\n"
                  << "oligo_length=" << kOligoLength << "\n"
                  << "output=" << out_path << "\n";
    } else {
        std::cout << "Length of DNA string:       " << summary.dna_length
                  << " bases\n"
                  << "DNA oligonucleotides:       " << summary.oligo_count
                  << "\n"
                  << "Length of each oligo:       " << kOligoLength
                  << " bases\n"
                  << "File size:                  "
                  << human_size(summary.file_bytes) << "\n"
                  << "Written to:                 " << out_path << "\n";
    }
    return 0;
}

int cmd_decode(const CommonOpts& opt) {
    if (!require_input_file(opt.input)) return 2;
    std::string out_path = opt.output;
    if (out_path.empty()) {
        if (opt.input.size() > 5 &&
            opt.input.substr(opt.input.size() - 5) == ".dnac") {
            out_path = opt.input.substr(0, opt.input.size() - 5);
        } else {
            std::cerr << "dnacloud: input does not end in .dnac; use --output\n";
            return 2;
        }
    }

    BaseSeq dna;
    ReassemblyStats stats;
    const BaseSink collect = [&dna](std::span<const std::uint8_t> b) {
        dna.insert(dna.end(), b.begin(), b.end());
    };
    bool streamed = false;
    {
        std::ifstream in(opt.input, std::ios::binary);
        if (!in) {
            std::cerr << "dnacloud: cannot open " << opt.input << "\n";
            return 2;
        }
        try {
            DnacReader reader(in, opt.buffer_size);
            StreamingReassembler reassembler(
                static_cast<std::uint8_t>(opt.file_id), collect);
            std::uint32_t ordinal = 0;
            while (auto text = reader.next())
                reassembler.add(oligo_from_text(*text, ordinal++));
            reassembler.finish();
            stats = reassembler.stats();
            streamed = true;
        } catch (const CodecError& e) {
            if (e.code() != Errc::out_of_order) throw;
        }
    }
    if (!streamed) {
        // pool is not chunk-sorted: reparse and vote in memory
        std::ifstream in(opt.input, std::ios::binary);
        if (!in) {
            std::cerr << "dnacloud: cannot open " << opt.input << "\n";
            return 2;
        }
        dna.clear();
        const std::vector<Oligo> oligos = parse_dnac_stream(in);
        dna = reassemble_dna(oligos, static_cast<std::uint8_t>(opt.file_id),
                             &stats);
    }

    OutputFile out(out_path);
    if (!out.ok()) {
        std::cerr << "dnacloud: cannot create " << out_path << "\n";
        return 1;
    }
    const std::uint64_t written = decode_dna_to_bytes(
        dna, Huffman3Table::instance(),
        [&out](std::span<const std::uint8_t> bytes) {
            out.stream().write(reinterpret_cast<const char*>(bytes.data()),
                               static_cast<std::streamsize>(bytes.size()));
        });
    out.commit();
    if (!out.committed_) {
        std::cerr << "dnacloud: write failure on " << out_path << "\n";
        return 1;
    }

    if (opt.machine) {
        std::cout << "bytes_written=" << written << "\n"
                  << "dna_length=" << dna.size() << "\n"
                  << "oligos_seen=" << stats.oligos_seen << "\n"
                  << "oligos_discarded="
                  << stats.discarded_index + stats.discarded_wrong_id << "\n"
                  << "vote_conflicts=" << stats.vote_conflicts << "\n"
                  << "output=" << out_path << "\n";
    } else {
        std::cout << "Recovered file:             " << human_size(written)
                  << "\n"
                  << "DNA string length:          " << dna.size() << " bases\n"
                  << "Oligos read:                " << stats.oligos_seen << "\n"
                  << "Oligos discarded:           "
                  << stats.discarded_index + stats.discarded_wrong_id << "\n"
                  << "Written to:                 " << out_path << "\n";
    }
    return 0;
}

int write_report(const std::string& save_path, const std::string& text) {
    if (save_path.empty()) return 0;
    std::ofstream f(save_path, std::ios::trunc);
    f << text;
    if (!f) {
        std::cerr << "dnacloud: cannot save report to " << save_path << "\n";
        return 1;
    }
    return 0;
}

int cmd_estimate_memory(const CommonOpts& opt, const std::string& save_path) {
    if (!require_input_file(opt.input)) return 2;
    const std::uint64_t size = fs::file_size(opt.input);
    const MemoryEstimate est =
        estimate_memory(size, Huffman3Table::instance());

    char mass[48];
    std::snprintf(mass, sizeof(mass), "%.4g", est.dna_mass_grams);
    std::string text;
    if (opt.machine) {
        char massmr[48];
        std::snprintf(massmr, sizeof(massmr), "%.17g", est.dna_mass_grams);
        text = "file_size=" + std::to_string(est.file_size) + "\n" +
               "dna_string_length=" + std::to_string(est.dna_string_length) +
               "\n" + "free_memory_required=" +
               std::to_string(est.free_memory_required) + "\n" +
               "dna_mass_grams=" + massmr + "\n";
    } else {
        text = "File size:                  " + human_size(est.file_size) +
               "\n" + "Size of DNA string:         " +
               std::to_string(est.dna_string_length) + " bases\n" +
               "Free memory required:       " +
               human_size(est.free_memory_required) + "\n" +
               "Amount of DNA required:     " + mass + " g\n";
    }
    std::cout << text;
    return write_report(save_path, text);
}

int cmd_estimate_biochem(const CommonOpts& opt, double salt_mm,
                         double cost_per_base, const std::string& save_path) {
    if (!require_input_file(opt.input)) return 2;
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) {
        std::cerr << "dnacloud: cannot open " << opt.input << "\n";
        return 2;
    }
    const std::vector<Oligo> oligos = parse_dnac_stream(in);
    const BiochemEstimate est = estimate_biochem(oligos, salt_mm, cost_per_base);

    char line[256];
    std::string text;
    if (opt.machine) {
        std::snprintf(line, sizeof(line),
                      "gc_fraction=%.17g\nmelting_temperature_c=%.17g\n"
                      "total_cost=%.17g\ntotal_bases=%" PRIu64 "\n",
                      est.gc_fraction, est.melting_temperature_c,
                      est.total_cost, est.total_bases);
        text = line;
    } else {
        std::snprintf(line, sizeof(line),
                      "GC content:                 %.2f %%\n"
                      "Melting temperature:        %.2f C\n"
                      "Total bases:                %" PRIu64 "\n"
                      "Total cost:                 %.2f\n",
                      100.0 * est.gc_fraction, est.melting_temperature_c,
                      est.total_bases, est.total_cost);
        text = line;
    }
    std::cout << text;
    return write_report(save_path, text);
}

int cmd_export_fasta(const CommonOpts& opt) {
    if (!require_input_file(opt.input)) return 2;
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) {
        std::cerr << "dnacloud: cannot open " << opt.input << "\n";
        return 2;
    }
    const std::vector<Oligo> oligos = parse_dnac_stream(in);
    const std::string out_path =
        opt.output.empty() ? opt.input + ".fasta" : opt.output;
    OutputFile out(out_path);
    if (!out.ok()) {
        std::cerr << "dnacloud: cannot create " << out_path << "\n";
        return 1;
    }
    const std::uint64_t bytes = export_fasta(
        oligos, static_cast<std::uint8_t>(opt.file_id), out.stream());
    out.commit();
    if (!out.committed_) {
        std::cerr << "dnacloud: write failure on " << out_path << "\n";
        return 1;
    }
    if (opt.machine) {
        std::cout << "records=" << oligos.size() << "\n"
                  << "bytes=" << bytes << "\n"
                  << "output=" << out_path << "\n";
    } else {
        std::cout << "FASTA records:              " << oligos.size() << "\n"
                  << "Written to:                 " << out_path << "\n";
    }
    return 0;
}

int cmd_simulate(const CommonOpts& opt, const ChannelConfig& base,
                 unsigned trials) {
    if (!require_input_file(opt.input)) return 2;
    std::ifstream in(opt.input, std::ios::binary);
    if (!in) {
        std::cerr << "dnacloud: cannot open " << opt.input << "\n";
        return 2;
    }
    std::vector<std::uint8_t> bytes(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    EncoderConfig encoder_config;
    encoder_config.file_id = static_cast<std::uint8_t>(opt.file_id);
    encoder_config.allow_index_overflow = opt.force_index_overflow;

    std::cout << kTrialCsvHeader << "\n";
    std::uint64_t recovered = 0;
    for (unsigned t = 0; t < trials; ++t) {
        ChannelConfig config = base;
        config.seed = trial_seed(base.seed, t);
        const TrialReport report = run_trial(bytes, config, encoder_config);
        recovered += report.recovered ? 1 : 0;
        std::cout << trial_csv_row(report, config) << "\n";
    }
    std::cerr << "dnacloud: " << recovered << "/" << trials
              << " trials recovered\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"file <-> DNA oligo codec with storage estimators"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string save_path;
    double salt_mm = 0.0, cost_per_base = 0.0;
    ChannelConfig channel;
    unsigned trials = 1;

    const auto add_common = [&](CLI::App* cmd, bool with_output) {
        cmd->add_option("input", opt.input, "input file")->required();
        if (with_output)
            cmd->add_option("-o,--output", opt.output, "output path");
        cmd->add_flag("-m,--machine-readable", opt.machine,
                      "line-oriented key=value output");
        return cmd;
    };

    CLI::App* enc = add_common(app.add_subcommand("encode",
                                                  "file to .dnac oligo pool"),
                               true);
    enc->add_option("--buffer-size", opt.buffer_size, "read buffer in bytes")
        ->check(CLI::PositiveNumber);
    enc->add_option("--file-id", opt.file_id, "pool id, 0..8")
        ->check(CLI::Range(0u, 8u));
    enc->add_flag("--force-index-overflow", opt.force_index_overflow,
                  "wrap chunk numbers past the 12-trit capacity");

    CLI::App* dec = add_common(app.add_subcommand("decode",
                                                  ".dnac back to the file"),
                               true);
    dec->add_option("--buffer-size", opt.buffer_size, "read buffer in bytes")
        ->check(CLI::PositiveNumber);
    dec->add_option("--file-id", opt.file_id, "expected pool id")
        ->check(CLI::Range(0u, 8u));

    CLI::App* em = add_common(
        app.add_subcommand("estimate-memory",
                           "storage projections for a file"),
        false);
    em->add_option("--save", save_path, "also write the report here");

    CLI::App* eb = add_common(
        app.add_subcommand("estimate-biochem",
                           "GC content, melting temperature and cost of a pool"),
        false);
    eb->add_option("--salt-mm", salt_mm, "Na+ concentration in mM")
        ->required()
        ->check(CLI::PositiveNumber);
    eb->add_option("--cost-per-base", cost_per_base, "synthesis cost per base")
        ->required()
        ->check(CLI::NonNegativeNumber);
    eb->add_option("--save", save_path, "also write the report here");

    CLI::App* ef = add_common(
        app.add_subcommand("export-fasta", "pool as a synthesizer FASTA file"),
        true);
    ef->add_option("--file-id", opt.file_id, "id stamped into headers")
        ->check(CLI::Range(0u, 8u));

    CLI::App* sim = add_common(
        app.add_subcommand("simulate",
                           "channel trials, one CSV row per trial"),
        false);
    sim->add_option("--drop-rate", channel.drop_rate, "per-oligo drop rate")
        ->check(CLI::Range(0.0, 1.0));
    sim->add_option("--sub-rate", channel.substitution_rate,
                    "per-base substitution rate")
        ->check(CLI::Range(0.0, 1.0));
    sim->add_option("--dup-factor", channel.duplication_factor,
                    "copies per oligo")
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--seed", channel.seed, "base RNG seed");
    sim->add_option("--trials", trials, "number of trials")
        ->check(CLI::PositiveNumber);
    sim->add_option("--file-id", opt.file_id, "pool id")
        ->check(CLI::Range(0u, 8u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (enc->parsed()) return cmd_encode(opt);
        if (dec->parsed()) return cmd_decode(opt);
        if (em->parsed()) return cmd_estimate_memory(opt, save_path);
        if (eb->parsed())
            return cmd_estimate_biochem(opt, salt_mm, cost_per_base, save_path);
        if (ef->parsed()) return cmd_export_fasta(opt);
        if (sim->parsed()) return cmd_simulate(opt, channel, trials);
    } catch (const CodecError& e) {
        std::cerr << "dnacloud: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "dnacloud: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
