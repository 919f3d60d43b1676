// Scalar loop bodies shared by the reference Ops table and the SIMD tails.

#pragma once

#include <cstddef>
#include <cstdint>

#include "dnacloud/kernels.hpp"

namespace dnacloud::kernels::detail {

inline void trits_to_bases_loop(const std::uint8_t* trits, std::size_t n,
                                std::uint8_t prev, std::uint8_t* out) {
    std::uint8_t p = prev & 3;
    for (std::size_t i = 0; i < n; ++i) {
        p = static_cast<std::uint8_t>((p + trits[i] + 1) & 3);
        out[i] = p;
    }
}

inline std::size_t bases_to_trits_loop(const std::uint8_t* bases, std::size_t n,
                                       std::uint8_t prev, std::uint8_t* out) {
    std::uint8_t p = prev & 3;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t d = static_cast<std::uint8_t>((bases[i] - p) & 3);
        if (d == 0) return i;
        out[i] = static_cast<std::uint8_t>(d - 1);
        p = bases[i];
    }
    return n;
}

inline std::size_t find_adjacent_equal_loop(const std::uint8_t* bases,
                                            std::size_t n, std::uint8_t prev) {
    std::uint8_t p = prev;
    for (std::size_t i = 0; i < n; ++i) {
        if (bases[i] == p) return i;
        p = bases[i];
    }
    return n;
}

inline std::uint64_t count_gc_loop(const std::uint8_t* bases, std::size_t n) {
    std::uint64_t gc = 0;
    for (std::size_t i = 0; i < n; ++i)
        gc += (bases[i] == 1) | (bases[i] == 2);
    return gc;
}

inline std::uint8_t sat_add_u8(std::uint8_t a, std::uint8_t b) {
    const unsigned s = unsigned(a) + unsigned(b);
    return static_cast<std::uint8_t>(s > 255 ? 255 : s);
}

inline void vote_accumulate_loop(std::uint8_t* p0, std::uint8_t* p1,
                                 std::uint8_t* p2, std::uint8_t* p3,
                                 const std::uint8_t* bases, std::size_t n) {
    std::uint8_t* planes[4] = {p0, p1, p2, p3};
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t& c = planes[bases[i] & 3][i];
        c = sat_add_u8(c, 1);
    }
}

inline ResolveResult vote_resolve_loop(const std::uint8_t* p0,
                                       const std::uint8_t* p1,
                                       const std::uint8_t* p2,
                                       const std::uint8_t* p3, std::size_t n,
                                       std::uint8_t* out) {
    ResolveResult r{n, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t c[4] = {p0[i], p1[i], p2[i], p3[i]};
        std::uint8_t mx = c[0];
        for (int v = 1; v < 4; ++v)
            if (c[v] > mx) mx = c[v];
        if (mx == 0) {
            r.fail_pos = i;
            r.fail_kind = 1;
            return r;
        }
        int eq = 0, winner = 0;
        for (int v = 0; v < 4; ++v) {
            if (c[v] == mx) {
                ++eq;
                winner = v;
            }
        }
        if (eq > 1) {
            r.fail_pos = i;
            r.fail_kind = 2;
            return r;
        }
        const std::uint8_t total =
            sat_add_u8(sat_add_u8(c[0], c[1]), sat_add_u8(c[2], c[3]));
        r.conflicts += (total != mx);
        out[i] = static_cast<std::uint8_t>(winner);
    }
    return r;
}

inline std::size_t ascii_to_codes_loop(const char* text, std::size_t n,
                                       std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t code;
        switch (text[i]) {
            case 'A': code = 0; break;
            case 'C': code = 1; break;
            case 'G': code = 2; break;
            case 'T': code = 3; break;
            default: return i;
        }
        out[i] = code;
    }
    return n;
}

inline void codes_to_ascii_loop(const std::uint8_t* codes, std::size_t n,
                                char* out) {
    constexpr char kChars[4] = {'A', 'C', 'G', 'T'};
    for (std::size_t i = 0; i < n; ++i)
        out[i] = kChars[codes[i] & 3];
}

}  // namespace dnacloud::kernels::detail
