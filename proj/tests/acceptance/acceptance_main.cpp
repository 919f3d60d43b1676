// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Criteria 1 and 8 drive the installed CLI binary; the rest use
// the library directly.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dnacloud/channel_sim.hpp"
#include "dnacloud/decoder.hpp"
#include "dnacloud/encoder.hpp"
#include "dnacloud/errors.hpp"
#include "dnacloud/estimator.hpp"
#include "dnacloud/format.hpp"
#include "dnacloud/huffman3.hpp"
#include "dnacloud/kernels.hpp"
#include "dnacloud/trit_dna.hpp"
#include "../support/test_util.hpp"

using namespace dnacloud;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string("\"") + DNACLOUD_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<Oligo> encode_pool(const std::vector<std::uint8_t>& bytes,
                               BaseSeq* dna_out = nullptr) {
    std::vector<Oligo> oligos;
    OligoSegmenter segmenter({}, [&oligos](const Oligo& o) {
        oligos.push_back(o);
    });
    DnaStreamEncoder encoder(Huffman3Table::instance());
    const BaseSink sink = [&](std::span<const std::uint8_t> b) {
        segmenter.update(b);
        if (dna_out) dna_out->insert(dna_out->end(), b.begin(), b.end());
    };
    encoder.update(bytes, sink);
    encoder.finish(sink, kMinDnaLength);
    segmenter.finish();
    return oligos;
}

std::vector<std::uint8_t> decode_pool(const std::vector<Oligo>& oligos,
                                      ReassemblyStats* stats = nullptr) {
    Reassembler reassembler(0);
    for (const Oligo& o : oligos) reassembler.add(o);
    BaseSeq dna = reassembler.finish();
    if (stats) *stats = reassembler.stats();
    std::vector<std::uint8_t> out;
    decode_dna_to_bytes(dna, Huffman3Table::instance(),
                        [&out](std::span<const std::uint8_t> b) {
                            out.insert(out.end(), b.begin(), b.end());
                        });
    return out;
}

// ---- corpus shared by criteria 1 and 3 ----

struct CorpusFile {
    std::string name;
    std::vector<std::uint8_t> bytes;
};

std::vector<CorpusFile> build_corpus() {
    std::vector<CorpusFile> corpus;
    for (const std::size_t size : {std::size_t{0}, std::size_t{1},
                                   std::size_t{17}, std::size_t{4096},
                                   std::size_t{1} << 20}) {
        corpus.push_back({"random_" + std::to_string(size),
                          testutil::random_bytes(size, 0xC0FFEE + size)});
    }
    for (const char* fixture : {"fixture.txt", "fixture.png"}) {
        const std::string text =
            testutil::read_file(fs::path(DNACLOUD_DATA_DIR) / fixture);
        corpus.push_back(
            {fixture, std::vector<std::uint8_t>(text.begin(), text.end())});
    }
    return corpus;
}

// ---- criteria ----

Check criterion1_round_trip() {
    Check c;
    const auto start = Clock::now();
    testutil::TempDir tmp("acceptance_c1");
    for (const CorpusFile& file : build_corpus()) {
        const fs::path input = tmp.path() / file.name;
        testutil::write_file(input, file.bytes.data(), file.bytes.size());
        if (run_cli("encode " + input.string()) != 0) {
            c.fail(file.name + ": encode failed");
            continue;
        }
        const fs::path out = tmp.path() / (file.name + ".out");
        if (run_cli("decode " + input.string() + ".dnac -o " + out.string()) !=
            0) {
            c.fail(file.name + ": decode failed");
            continue;
        }
        const std::string back = testutil::read_file(out);
        c.expect(testutil::bytes_equal(file.bytes, back),
                 file.name + ": bytes differ after the round trip");
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    c.expect(secs < 10.0,
             "round trips took " + std::to_string(secs) + " s, budget 10 s");
    return c;
}

Check criterion2_oligo_geometry() {
    Check c;
    const auto bytes = testutil::random_bytes(50000, 0xB10B);
    BaseSeq dna;
    const auto oligos = encode_pool(bytes, &dna);
    c.expect(oligos.size() >= 10000,
             "corpus too small: " + std::to_string(oligos.size()) + " oligos");
    for (std::size_t k = 0; k < oligos.size(); ++k) {
        const Oligo& o = oligos[k];
        static_assert(sizeof(o.bases) == 117);
        if (!(o.bases[0] == kBaseA || o.bases[0] == kBaseT) ||
            !(o.bases[116] == kBaseG || o.bases[116] == kBaseC)) {
            c.fail("oligo " + std::to_string(k) + ": flank rule violated");
            break;
        }
        if (!std::equal(o.bases + 1, o.bases + 1 + kSegmentLength,
                        dna.begin() + 25 * k)) {
            c.fail("oligo " + std::to_string(k) +
                   ": payload is not the 100-base slice at 25k");
            break;
        }
        const auto info = decode_index(o.bases + 101, o.bases[100]);
        if (!info || info->id != 0 || info->chunk != k) {
            c.fail("oligo " + std::to_string(k) +
                   ": index does not decode to (0, k) with valid parity");
            break;
        }
    }
    return c;
}

Check criterion3_homopolymer_freedom() {
    Check c;
    for (const CorpusFile& file : build_corpus()) {
        BaseSeq dna;
        const auto oligos = encode_pool(file.bytes, &dna);
        c.expect(kernels::active().find_adjacent_equal(dna.data(), dna.size(),
                                                       0xFF) == dna.size(),
                 file.name + ": adjacent equal bases in the DNA string");
        for (const Oligo& o : oligos) {
            if (kernels::active().find_adjacent_equal(o.bases, kOligoLength,
                                                      0xFF) != kOligoLength) {
                c.fail(file.name + ": adjacent equal bases inside an oligo");
                break;
            }
        }
    }
    return c;
}

Check criterion4_erasure() {
    Check c;
    const auto start = Clock::now();
    const auto bytes = testutil::random_bytes(100000, 0xE7A5);
    BaseSeq dna;
    const auto oligos = encode_pool(bytes, &dna);
    const std::size_t n = oligos.size();

    // single deletions: full sweep over interior oligos 3 .. n-4
    {
        const unsigned workers =
            std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{3};
        std::atomic<std::size_t> failures{0};
        std::string first_failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            Reassembler reassembler(0);
            std::vector<std::uint8_t> out;
            out.reserve(bytes.size());
            while (true) {
                const std::size_t victim = next.fetch_add(1);
                if (victim >= n - 3) break;
                reassembler.reset();
                for (std::size_t i = 0; i < n; ++i)
                    if (i != victim) reassembler.add(oligos[i]);
                bool ok = false;
                try {
                    const BaseSeq rebuilt = reassembler.finish();
                    out.clear();
                    decode_dna_to_bytes(
                        rebuilt, Huffman3Table::instance(),
                        [&out](std::span<const std::uint8_t> b) {
                            out.insert(out.end(), b.begin(), b.end());
                        });
                    ok = out == bytes;
                } catch (const CodecError&) {
                    ok = false;
                }
                if (!ok) {
                    failures.fetch_add(1);
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (first_failure.empty())
                        first_failure =
                            "deleting oligo " + std::to_string(victim) +
                            " broke recovery";
                }
            }
        };
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        c.expect(failures.load() == 0, first_failure);
    }

    // four consecutive deletions: every interior window start
    {
        const unsigned workers =
            std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{1};
        std::atomic<std::size_t> failures{0};
        auto worker = [&] {
            Reassembler reassembler(0);
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k + 4 >= n - 1) break;
                reassembler.reset();
                for (std::size_t i = 0; i < n; ++i)
                    if (i < k || i > k + 3) reassembler.add(oligos[i]);
                bool gap = false;
                try {
                    (void)reassembler.finish();
                } catch (const CodecError& e) {
                    gap = e.code() == Errc::coverage_gap &&
                          e.position() == 25 * (k + 3);
                }
                if (!gap) failures.fetch_add(1);
            }
        };
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        c.expect(failures.load() == 0,
                 "a 4-consecutive deletion window did not raise coverage_gap "
                 "at 25*(k+3)");
    }

    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    c.expect(secs < 60.0,
             "erasure sweeps took " + std::to_string(secs) + " s, budget 60 s");
    return c;
}

Check criterion5_mass() {
    Check c;
    const double mass = dna_mass_grams(15902545);
    const double target = 3.4e-14;
    c.expect(std::abs(mass - target) <= 0.05 * target,
             "mass " + std::to_string(mass) + " g outside 5% of 3.4e-14 g");
    return c;
}

Check criterion6_size_caps() {
    Check c;
    try {
        const TritSeq trits = int_to_trits(3486784400ULL, 20);
        c.expect(trits == TritSeq(20, 2), "3^20-1 should be twenty 2s");
    } catch (const CodecError&) {
        c.fail("int_to_trits(3486784400, 20) should succeed");
    }
    try {
        (void)int_to_trits(3486784401ULL, 20);
        c.fail("int_to_trits(3486784401, 20) should overflow");
    } catch (const CodecError& e) {
        c.expect(e.code() == Errc::trit_overflow, "wrong error code");
    }
    try {
        check_footer_capacity(kMaxDnaLength + 1);
        c.fail("encoder accepted a payload beyond 3^20 - 1 bases");
    } catch (const CodecError& e) {
        c.expect(e.code() == Errc::input_too_large, "wrong error code");
    }
    try {
        check_footer_capacity(kMaxDnaLength);
    } catch (const CodecError&) {
        c.fail("encoder rejected a payload of exactly 3^20 - 1 bases");
    }
    return c;
}

Check criterion7_huffman_shape() {
    Check c;
    const auto& table = Huffman3Table::instance();
    int n5 = 0, n6 = 0;
    for (int b = 0; b < 256; ++b) {
        const int len = table.codeword_length(static_cast<std::uint8_t>(b));
        if (len == 5)
            ++n5;
        else if (len == 6)
            ++n6;
        else
            c.fail("byte " + std::to_string(b) + " has codeword length " +
                   std::to_string(len));
    }
    c.expect(n5 + n6 == 256, "codeword count mismatch");
    c.expect(3 * n5 + n6 <= 729, "Kraft sum exceeds 1");
    for (int x = 0; x < 256 && c.ok; ++x) {
        const auto cx = table.codeword(static_cast<std::uint8_t>(x));
        for (int y = 0; y < 256; ++y) {
            if (x == y) continue;
            const auto cy = table.codeword(static_cast<std::uint8_t>(y));
            if (cx.size() > cy.size()) continue;
            if (std::equal(cx.begin(), cx.end(), cy.begin())) {
                c.fail("codeword of byte " + std::to_string(x) +
                       " prefixes byte " + std::to_string(y));
                break;
            }
        }
    }
    return c;
}

Check criterion8_buffering_invariance() {
    Check c;
    testutil::TempDir tmp("acceptance_c8");
    const auto bytes = testutil::random_bytes(std::size_t{1} << 20, 0xBFF);
    const fs::path input = tmp.path() / "payload.bin";
    testutil::write_file(input, bytes.data(), bytes.size());

    std::string reference;
    for (const char* buffer : {"1", "7", "4096", "1000000"}) {
        const fs::path out = tmp.path() / (std::string("out_") + buffer);
        if (run_cli("encode " + input.string() + " -o " + out.string() +
                    " --buffer-size " + buffer) != 0) {
            c.fail(std::string("encode failed at buffer size ") + buffer);
            continue;
        }
        const std::string container = testutil::read_file(out);
        if (reference.empty())
            reference = container;
        else
            c.expect(container == reference,
                     std::string("container differs at buffer size ") + buffer);
    }
    return c;
}

Check criterion9_format_golden() {
    Check c;
    // pinned 3-oligo fixture: trits 0,1,2 repeating, rotation-coded from A
    TritSeq trits(150);
    for (std::size_t i = 0; i < trits.size(); ++i)
        trits[i] = static_cast<std::uint8_t>(i % 3);
    const BaseSeq dna = trits_to_dna(trits, kBaseA);
    const auto fixture = segment_into_oligos(dna, {});
    c.expect(fixture.size() == 3, "fixture should hold 3 oligos");

    std::ostringstream dnac, fasta;
    write_dnac(fixture, dnac);
    export_fasta(fixture, 0, fasta);
    const auto data_dir = fs::path(DNACLOUD_DATA_DIR);
    c.expect(dnac.str() ==
                 testutil::read_file(data_dir / "golden_pool.dnac"),
             ".dnac bytes differ from the golden file");
    c.expect(fasta.str() ==
                 testutil::read_file(data_dir / "golden_pool.fasta"),
             "FASTA bytes differ from the golden file");

    // write/read identity over 1000 random pools
    std::mt19937_64 rng(0x90);
    for (int pool_i = 0; pool_i < 1000 && c.ok; ++pool_i) {
        std::vector<Oligo> pool;
        const std::size_t count = rng() % 12;
        for (std::size_t i = 0; i < count; ++i) {
            Oligo o;
            const BaseSeq bases =
                testutil::random_clean_bases(kOligoLength, 0xFF, rng());
            std::copy(bases.begin(), bases.end(), o.bases);
            o.position = static_cast<std::uint32_t>(i);
            pool.push_back(o);
        }
        std::stringstream io;
        write_dnac(pool, io);
        const auto back = read_dnac(io);
        bool same = back.size() == pool.size();
        for (std::size_t i = 0; same && i < pool.size(); ++i)
            same = std::equal(pool[i].bases, pool[i].bases + kOligoLength,
                              back[i].bases);
        c.expect(same, "write/read identity failed on pool " +
                           std::to_string(pool_i));
    }
    return c;
}

Check criterion10_channel_monotonicity() {
    Check c;
    const auto bytes = testutil::random_bytes(10000, 0xCAB);
    const double rates[] = {0.0, 0.05, 0.1, 0.2};
    unsigned recovered[4] = {0, 0, 0, 0};
    constexpr unsigned kTrials = 100;
    for (unsigned t = 0; t < kTrials; ++t) {
        for (std::size_t r = 0; r < 4; ++r) {
            ChannelConfig config;
            config.drop_rate = rates[r];
            config.seed = trial_seed(0x5EED, t);
            recovered[r] += run_trial(bytes, config).recovered ? 1 : 0;
        }
    }
    c.expect(recovered[0] == kTrials, "drop rate 0 must recover 100%");
    for (std::size_t r = 1; r < 4; ++r)
        c.expect(recovered[r] <= recovered[r - 1],
                 "recovery rate increased from drop " +
                     std::to_string(rates[r - 1]) + " to " +
                     std::to_string(rates[r]));
    std::cerr << "    recovery/100 at drop {0, .05, .1, .2}: " << recovered[0]
              << " " << recovered[1] << " " << recovered[2] << " "
              << recovered[3] << "\n";
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "round-trip exactness (CLI)", criterion1_round_trip},
        {2, "oligo geometry", criterion2_oligo_geometry},
        {3, "homopolymer freedom", criterion3_homopolymer_freedom},
        {4, "redundancy and erasure sweeps", criterion4_erasure},
        {5, "mass model vs published figure", criterion5_mass},
        {6, "size caps", criterion6_size_caps},
        {7, "ternary Huffman code shape", criterion7_huffman_shape},
        {8, "buffering invariance (CLI)", criterion8_buffering_invariance},
        {9, "container golden bytes", criterion9_format_golden},
        {10, "channel monotonicity", criterion10_channel_monotonicity},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = Clock::now();
        Check result;
        try {
            result = criterion.fn();
        } catch (const std::exception& e) {
            result.fail(std::string("unexpected exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(Clock::now() - start).count();
        char line[256];
        std::snprintf(line, sizeof(line), "%s  %2d  %-36s (%.2f s)%s%s",
                      result.ok ? "PASS" : "FAIL", criterion.id,
                      criterion.name, secs, result.ok ? "" : "  -- ",
                      result.ok ? "" : result.detail.c_str());
        std::cout << line << std::endl;
        failures += result.ok ? 0 : 1;
    }
    return failures;
}
