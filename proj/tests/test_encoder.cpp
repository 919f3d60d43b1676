#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dnacloud/encoder.hpp"
#include "dnacloud/errors.hpp"
#include "dnacloud/kernels.hpp"
#include "dnacloud/trit_dna.hpp"
#include "support/test_util.hpp"

using namespace dnacloud;

namespace {

std::istringstream byte_stream(const std::vector<std::uint8_t>& bytes) {
    return std::istringstream(
        std::string(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void check_oligo_shape(const Oligo& oligo, std::uint8_t file_id) {
    CHECK((oligo.bases[0] == kBaseA || oligo.bases[0] == kBaseT));
    CHECK((oligo.bases[kOligoLength - 1] == kBaseG ||
           oligo.bases[kOligoLength - 1] == kBaseC));
    CHECK(kernels::active().find_adjacent_equal(oligo.bases, kOligoLength,
                                                0xFF) == kOligoLength);
    const auto info =
        decode_index(oligo.bases + 1 + kSegmentLength, oligo.bases[kSegmentLength]);
    REQUIRE(info.has_value());
    CHECK(info->id == file_id);
    CHECK(info->chunk == oligo.position);
}

}  // namespace

TEST_CASE("footer pad arithmetic without a length floor") {
    // (len + pad + 20) % 25 == 0 with the smallest pad
    for (const auto [len, total] :
         std::initializer_list<std::pair<std::size_t, std::size_t>>{
             {100, 125}, {0, 25}, {5, 25}}) {
        BaseSeq payload = testutil::random_clean_bases(len, kBaseA, len + 1);
        const BaseSeq out = append_length_footer(payload, 0);
        CHECK(out.size() == total);
        // payload untouched in front
        CHECK(std::equal(payload.begin(), payload.end(), out.begin()));
    }
}

TEST_CASE("footer pad arithmetic with the 100-base pipeline floor") {
    for (const auto [len, total] :
         std::initializer_list<std::pair<std::size_t, std::size_t>>{
             {0, 100}, {5, 100}, {6, 100}, {80, 100}, {81, 125}, {100, 125}}) {
        BaseSeq payload = testutil::random_clean_bases(len, kBaseA, len + 7);
        const BaseSeq out = append_length_footer(payload, kMinDnaLength);
        CHECK(out.size() == total);
    }
}

TEST_CASE("footer decodes back to the payload length over zero pad") {
    for (const std::size_t len : {0u, 5u, 77u, 100u, 3333u}) {
        const BaseSeq payload =
            testutil::random_clean_bases(len, kBaseA, len + 13);
        const BaseSeq out = append_length_footer(payload, kMinDnaLength);
        const std::uint8_t prev = len == 0 ? kBaseA : payload.back();
        const TritSeq tail = dna_to_trits(
            {out.data() + len, out.size() - len}, prev);
        // pad zeros then the 20-trit big-endian length
        const std::size_t pad = tail.size() - kFooterTrits;
        for (std::size_t i = 0; i < pad; ++i) CHECK(tail[i] == 0);
        CHECK(trits_to_int({tail.data() + pad, kFooterTrits}) == len);
    }
}

TEST_CASE("footer capacity guard") {
    CHECK_NOTHROW(check_footer_capacity(kMaxDnaLength));
    CHECK_THROWS_AS(check_footer_capacity(kMaxDnaLength + 1), CodecError);
    try {
        check_footer_capacity(kMaxDnaLength + 1);
    } catch (const CodecError& e) {
        CHECK(e.code() == Errc::input_too_large);
    }
}

TEST_CASE("empty input encodes to the 100-base floor") {
    std::istringstream empty;
    const BaseSeq dna = encode_stream_to_dna(empty, {});
    CHECK(dna.size() == kMinDnaLength);
    CHECK(kernels::active().find_adjacent_equal(dna.data(), dna.size(),
                                                kBaseA) == dna.size());
}

TEST_CASE("buffer size never changes the output") {
    const auto bytes = testutil::random_bytes(100000, 404);
    BaseSeq reference;
    for (const std::size_t buffer : {std::size_t{1}, std::size_t{7},
                                     std::size_t{4096}, std::size_t{1000000}}) {
        EncoderConfig config;
        config.buffer_size = buffer;
        auto in = byte_stream(bytes);
        const BaseSeq dna = encode_stream_to_dna(in, config);
        if (reference.empty())
            reference = dna;
        else
            CHECK(dna == reference);
    }
    CHECK(reference.size() % kSegmentStep == 0);
    CHECK(kernels::active().find_adjacent_equal(
              reference.data(), reference.size(), kBaseA) == reference.size());
}

TEST_CASE("segmentation geometry") {
    SUBCASE("100 bases give one oligo") {
        const BaseSeq dna = testutil::random_clean_bases(100, kBaseA, 1);
        const auto oligos = segment_into_oligos(dna, {});
        REQUIRE(oligos.size() == 1);
        CHECK(oligos[0].position == 0);
        CHECK(std::equal(dna.begin(), dna.end(), oligos[0].bases + 1));
        check_oligo_shape(oligos[0], 0);
    }
    SUBCASE("125 bases give two oligos at offsets 0 and 25") {
        const BaseSeq dna = testutil::random_clean_bases(125, kBaseA, 2);
        const auto oligos = segment_into_oligos(dna, {});
        REQUIRE(oligos.size() == 2);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(oligos[k].position == k);
            CHECK(std::equal(dna.begin() + 25 * k, dna.begin() + 25 * k + 100,
                             oligos[k].bases + 1));
        }
    }
    SUBCASE("short strings are rejected") {
        const BaseSeq dna = testutil::random_clean_bases(75, kBaseA, 3);
        CHECK_THROWS_AS((void)segment_into_oligos(dna, {}), CodecError);
        try {
            (void)segment_into_oligos(dna, {});
        } catch (const CodecError& e) {
            CHECK(e.code() == Errc::too_short);
        }
    }
    SUBCASE("interior positions are covered exactly four times") {
        const BaseSeq dna = testutil::random_clean_bases(1000, kBaseA, 4);
        EncoderConfig config;
        config.file_id = 3;
        const auto oligos = segment_into_oligos(dna, config);
        REQUIRE(oligos.size() == 1000 / 25 - 3);
        // position 80 lies in the first fully overlapped block and appears
        // in oligos 0..3 only; position 60 is still in the 3-fold head ramp
        for (std::size_t k = 0; k < oligos.size(); ++k) {
            const bool covers80 = 25 * k <= 80 && 80 < 25 * k + 100;
            CHECK(covers80 == (k <= 3));
            const bool covers60 = 25 * k <= 60 && 60 < 25 * k + 100;
            CHECK(covers60 == (k <= 2));
        }
        // every interior position is covered exactly four times
        for (std::size_t p = 75; p + 75 < 1000; ++p) {
            std::size_t cover = 0;
            for (std::size_t k = 0; k < oligos.size(); ++k)
                cover += 25 * k <= p && p < 25 * k + 100;
            CHECK(cover == 4);
        }
        // overlay reconstructs the string on every overlap
        for (std::size_t k = 0; k < oligos.size(); ++k) {
            check_oligo_shape(oligos[k], 3);
            CHECK(std::equal(oligos[k].bases + 1, oligos[k].bases + 101,
                             dna.begin() + 25 * k));
        }
    }
}

TEST_CASE("flank choice avoids the neighboring base") {
    // payload beginning with A forces a T flank; index tail of G forces C
    BaseSeq payload = testutil::random_clean_bases(100, kBaseT, 9);
    payload[0] = kBaseA;  // legal: predecessor is the flank, not the stream
    const Oligo oligo = make_oligo(payload.data(), 0, 0);
    CHECK(oligo.bases[0] == kBaseT);
    CHECK(oligo.bases[1] == kBaseA);
    CHECK(oligo.bases[kOligoLength - 1] !=
          oligo.bases[kOligoLength - 2]);

    for (std::uint32_t chunk = 0; chunk < 200; ++chunk) {
        const BaseSeq p = testutil::random_clean_bases(100, kBaseA, chunk);
        const Oligo o = make_oligo(p.data(), 5, chunk);
        check_oligo_shape(o, 5);
    }
}

TEST_CASE("index info round trip and parity") {
    for (std::uint8_t id = 0; id <= kMaxFileId; ++id) {
        for (const std::uint32_t chunk :
             {0u, 1u, 12345u, 531440u /* 3^12 - 1 */}) {
            const auto trits = encode_index(id, chunk);
            REQUIRE(trits.size() == kIndexTrits);
            unsigned sum = 0;
            for (std::size_t i = 0; i + 1 < kIndexTrits; ++i) sum += trits[i];
            CHECK(trits[kIndexTrits - 1] == sum % 3);

            // through DNA and back
            for (std::uint8_t prev = 0; prev < 4; ++prev) {
                const BaseSeq bases = trits_to_dna({trits.data(), 15}, prev);
                const auto info = decode_index(bases.data(), prev);
                REQUIRE(info.has_value());
                CHECK(info->id == id);
                CHECK(info->chunk == chunk);
            }
        }
    }
}

TEST_CASE("any single index trit flip breaks parity") {
    const auto trits = encode_index(4, 98765);
    for (std::size_t i = 0; i < kIndexTrits; ++i) {
        for (std::uint8_t delta = 1; delta <= 2; ++delta) {
            auto flipped = trits;
            flipped[i] = static_cast<std::uint8_t>((flipped[i] + delta) % 3);
            const BaseSeq bases = trits_to_dna({flipped.data(), 15}, kBaseA);
            CHECK_FALSE(decode_index(bases.data(), kBaseA).has_value());
        }
    }
}

TEST_CASE("chunk index capacity is enforced and overridable") {
    // 25 * (3^12 + 3) + 25 bases force chunk number 3^12
    const std::size_t len = 25 * (kChunkCapacity + 4);
    const auto trits = testutil::random_trits(len, 777);
    const BaseSeq dna = trits_to_dna(trits, kBaseA);

    EncoderConfig config;
    CHECK_THROWS_AS((void)segment_into_oligos(dna, config), CodecError);

    config.allow_index_overflow = true;
    const auto oligos = segment_into_oligos(dna, config);
    REQUIRE(oligos.size() == kChunkCapacity + 1);
    CHECK(oligos.back().position == 0);  // wrapped
    const auto info = decode_index(oligos.back().bases + 101,
                                   oligos.back().bases[100]);
    REQUIRE(info.has_value());
    CHECK(info->chunk == 0);
}

TEST_CASE("pipeline summary is consistent") {
    const auto bytes = testutil::random_bytes(5000, 11);
    auto in = byte_stream(bytes);
    std::vector<Oligo> oligos;
    const EncodeSummary summary = encode_pipeline(
        in, {}, [&oligos](const Oligo& o) { oligos.push_back(o); });
    CHECK(summary.file_bytes == bytes.size());
    CHECK(summary.dna_length % 25 == 0);
    CHECK(summary.oligo_count == summary.dna_length / 25 - 3);
    CHECK(oligos.size() == summary.oligo_count);
    for (std::size_t k = 0; k < oligos.size(); ++k)
        CHECK(oligos[k].position == k);

    // matches the non-streaming composition
    auto in2 = byte_stream(bytes);
    const BaseSeq dna = encode_stream_to_dna(in2, {});
    CHECK(dna.size() == summary.dna_length);
    const auto direct = segment_into_oligos(dna, {});
    REQUIRE(direct.size() == oligos.size());
    for (std::size_t k = 0; k < direct.size(); ++k)
        CHECK(direct[k] == oligos[k]);
}
