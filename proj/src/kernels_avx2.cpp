// AVX2 variants. This translation unit is compiled with -mavx2 on x86 builds
// only; callers must gate on runtime CPU support (see kernels_dispatch.cpp).
//
// trits_to_bases is the only kernel with a loop-carried dependency; it is
// vectorized as an in-register prefix sum of (trit + 1) with the running
// rotation state folded in as a per-block carry. Sums stay below 256
// (32 lanes * 3 + carry), so u8 lanes never wrap before the final "& 3".

#include "dnacloud/kernels.hpp"

#include "kernels_impl.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace dnacloud::kernels {
namespace {

void trits_to_bases_avx2(const std::uint8_t* trits, std::size_t n,
                         std::uint8_t prev, std::uint8_t* out) {
    std::uint8_t carry = prev & 3;
    std::size_t i = 0;
    const __m256i ones = _mm256_set1_epi8(1);
    const __m256i mask3 = _mm256_set1_epi8(3);
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(
            reinterpret_cast<const __m256i*>(trits + i));
        v = _mm256_add_epi8(v, ones);
        v = _mm256_add_epi8(v, _mm256_slli_si256(v, 1));
        v = _mm256_add_epi8(v, _mm256_slli_si256(v, 2));
        v = _mm256_add_epi8(v, _mm256_slli_si256(v, 4));
        v = _mm256_add_epi8(v, _mm256_slli_si256(v, 8));
        // propagate the low 128-bit lane's last prefix into the high lane
        __m256i lo = _mm256_permute2x128_si256(v, v, 0x00);
        __m256i lo_last = _mm256_shuffle_epi8(lo, _mm256_set1_epi8(15));
        __m256i fix = _mm256_inserti128_si256(_mm256_setzero_si256(),
                                              _mm256_castsi256_si128(lo_last), 1);
        v = _mm256_add_epi8(v, fix);
        v = _mm256_add_epi8(v, _mm256_set1_epi8(static_cast<char>(carry)));
        const __m256i res = _mm256_and_si256(v, mask3);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), res);
        carry = static_cast<std::uint8_t>(_mm256_extract_epi8(res, 31));
    }
    detail::trits_to_bases_loop(trits + i, n - i, carry, out + i);
}

std::size_t bases_to_trits_avx2(const std::uint8_t* bases, std::size_t n,
                                std::uint8_t prev, std::uint8_t* out) {
    if (n == 0) return 0;
    if (detail::bases_to_trits_loop(bases, 1, prev, out) == 0) return 0;
    std::size_t i = 1;
    const __m256i mask3 = _mm256_set1_epi8(3);
    const __m256i one = _mm256_set1_epi8(1);
    for (; i + 32 <= n; i += 32) {
        const __m256i cur =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i));
        const __m256i prv =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i - 1));
        const __m256i d = _mm256_and_si256(_mm256_sub_epi8(cur, prv), mask3);
        const __m256i zero = _mm256_cmpeq_epi8(d, _mm256_setzero_si256());
        const unsigned m =
            static_cast<unsigned>(_mm256_movemask_epi8(zero));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                            _mm256_sub_epi8(d, one));
        if (m) return i + static_cast<std::size_t>(__builtin_ctz(m));
    }
    const std::size_t rest =
        detail::bases_to_trits_loop(bases + i, n - i, bases[i - 1], out + i);
    return i + rest;
}

std::size_t find_adjacent_equal_avx2(const std::uint8_t* bases, std::size_t n,
                                     std::uint8_t prev) {
    if (n == 0) return 0;
    if (bases[0] == prev) return 0;
    std::size_t i = 1;
    for (; i + 32 <= n; i += 32) {
        const __m256i cur =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i));
        const __m256i prv =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i - 1));
        const unsigned m = static_cast<unsigned>(
            _mm256_movemask_epi8(_mm256_cmpeq_epi8(cur, prv)));
        if (m) return i + static_cast<std::size_t>(__builtin_ctz(m));
    }
    const std::size_t rest =
        detail::find_adjacent_equal_loop(bases + i, n - i, bases[i - 1]);
    return i + rest;
}

std::uint64_t count_gc_avx2(const std::uint8_t* bases, std::size_t n) {
    const __m256i cC = _mm256_set1_epi8(1);
    const __m256i cG = _mm256_set1_epi8(2);
    const __m256i one = _mm256_set1_epi8(1);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i));
        const __m256i m = _mm256_or_si256(_mm256_cmpeq_epi8(v, cC),
                                          _mm256_cmpeq_epi8(v, cG));
        acc = _mm256_add_epi64(
            acc, _mm256_sad_epu8(_mm256_and_si256(m, one),
                                 _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t gc = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    return gc + detail::count_gc_loop(bases + i, n - i);
}

void vote_accumulate_avx2(std::uint8_t* p0, std::uint8_t* p1, std::uint8_t* p2,
                          std::uint8_t* p3, const std::uint8_t* bases,
                          std::size_t n) {
    std::uint8_t* planes[4] = {p0, p1, p2, p3};
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i b =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bases + i));
        for (int v = 0; v < 4; ++v) {
            const __m256i hit = _mm256_and_si256(
                _mm256_cmpeq_epi8(b, _mm256_set1_epi8(static_cast<char>(v))),
                one);
            __m256i* pp = reinterpret_cast<__m256i*>(planes[v] + i);
            _mm256_storeu_si256(pp,
                                _mm256_adds_epu8(_mm256_loadu_si256(pp), hit));
        }
    }
    detail::vote_accumulate_loop(p0 + i, p1 + i, p2 + i, p3 + i, bases + i,
                                 n - i);
}

ResolveResult vote_resolve_avx2(const std::uint8_t* p0, const std::uint8_t* p1,
                                const std::uint8_t* p2, const std::uint8_t* p3,
                                std::size_t n, std::uint8_t* out) {
    ResolveResult r{n, 0, 0};
    const __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i c0 =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p0 + i));
        const __m256i c1 =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p1 + i));
        const __m256i c2 =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p2 + i));
        const __m256i c3 =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p3 + i));
        const __m256i mx = _mm256_max_epu8(_mm256_max_epu8(c0, c1),
                                           _mm256_max_epu8(c2, c3));
        const __m256i gap = _mm256_cmpeq_epi8(mx, _mm256_setzero_si256());
        const __m256i eq0 = _mm256_cmpeq_epi8(c0, mx);
        const __m256i eq1 = _mm256_cmpeq_epi8(c1, mx);
        const __m256i eq2 = _mm256_cmpeq_epi8(c2, mx);
        const __m256i eq3 = _mm256_cmpeq_epi8(c3, mx);
        const __m256i neq = _mm256_add_epi8(
            _mm256_add_epi8(_mm256_and_si256(eq0, one),
                            _mm256_and_si256(eq1, one)),
            _mm256_add_epi8(_mm256_and_si256(eq2, one),
                            _mm256_and_si256(eq3, one)));
        const __m256i tie = _mm256_cmpgt_epi8(neq, one);
        const __m256i winner = _mm256_or_si256(
            _mm256_or_si256(_mm256_and_si256(eq1, one),
                            _mm256_and_si256(eq2, _mm256_set1_epi8(2))),
            _mm256_and_si256(eq3, _mm256_set1_epi8(3)));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), winner);
        const __m256i total = _mm256_adds_epu8(_mm256_adds_epu8(c0, c1),
                                               _mm256_adds_epu8(c2, c3));
        const unsigned agree = static_cast<unsigned>(
            _mm256_movemask_epi8(_mm256_cmpeq_epi8(total, mx)));
        const unsigned conf = ~agree;
        const unsigned badm = static_cast<unsigned>(
            _mm256_movemask_epi8(_mm256_or_si256(gap, tie)));
        if (badm) {
            const unsigned k = static_cast<unsigned>(__builtin_ctz(badm));
            const unsigned below = (k == 0) ? 0u : (conf & ((1u << k) - 1u));
            r.conflicts += static_cast<std::uint64_t>(__builtin_popcount(below));
            r.fail_pos = i + k;
            const unsigned gapm = static_cast<unsigned>(
                _mm256_movemask_epi8(gap));
            r.fail_kind = (gapm >> k) & 1u ? 1 : 2;
            return r;
        }
        r.conflicts += static_cast<std::uint64_t>(__builtin_popcount(conf));
    }
    ResolveResult t =
        detail::vote_resolve_loop(p0 + i, p1 + i, p2 + i, p3 + i, n - i,
                                  out + i);
    r.conflicts += t.conflicts;
    if (t.fail_kind) {
        r.fail_pos = i + t.fail_pos;
        r.fail_kind = t.fail_kind;
    }
    return r;
}

std::size_t ascii_to_codes_avx2(const char* text, std::size_t n,
                                std::uint8_t* out) {
    // low-nibble LUT: 'A'->1, 'C'->3, 'G'->7, 'T'->4; everything else -1.
    // A reverse shuffle through the base alphabet rejects look-alike bytes
    // (lower case, high-bit set, NUL).
    const __m256i lut = _mm256_setr_epi8(
        -1, 0, -1, 1, 3, -1, -1, 2, -1, -1, -1, -1, -1, -1, -1, -1,
        -1, 0, -1, 1, 3, -1, -1, 2, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m256i charlut = _mm256_setr_epi8(
        'A', 'C', 'G', 'T', 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        'A', 'C', 'G', 'T', 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
    const __m256i nib = _mm256_set1_epi8(0x0F);
    const __m256i invalid_code = _mm256_set1_epi8(-1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i c =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(text + i));
        const __m256i code = _mm256_shuffle_epi8(lut, _mm256_and_si256(c, nib));
        const __m256i back = _mm256_shuffle_epi8(charlut, code);
        const __m256i bad = _mm256_or_si256(
            _mm256_cmpeq_epi8(code, invalid_code),
            _mm256_xor_si256(_mm256_cmpeq_epi8(back, c),
                             _mm256_set1_epi8(-1)));
        const unsigned m =
            static_cast<unsigned>(_mm256_movemask_epi8(bad));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), code);
        if (m) return i + static_cast<std::size_t>(__builtin_ctz(m));
    }
    const std::size_t rest = detail::ascii_to_codes_loop(text + i, n - i, out + i);
    return i + rest;
}

void codes_to_ascii_avx2(const std::uint8_t* codes, std::size_t n, char* out) {
    const __m256i charlut = _mm256_setr_epi8(
        'A', 'C', 'G', 'T', 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        'A', 'C', 'G', 'T', 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
    const __m256i mask3 = _mm256_set1_epi8(3);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i v =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(codes + i));
        _mm256_storeu_si256(
            reinterpret_cast<__m256i*>(out + i),
            _mm256_shuffle_epi8(charlut, _mm256_and_si256(v, mask3)));
    }
    detail::codes_to_ascii_loop(codes + i, n - i, out + i);
}

}  // namespace

namespace detail {

const Ops* avx2_ops() {
    static const Ops ops{
        "avx2",
        &trits_to_bases_avx2,
        &bases_to_trits_avx2,
        &find_adjacent_equal_avx2,
        &count_gc_avx2,
        &vote_accumulate_avx2,
        &vote_resolve_avx2,
        &ascii_to_codes_avx2,
        &codes_to_ascii_avx2,
    };
    return &ops;
}

}  // namespace detail
}  // namespace dnacloud::kernels

#endif  // __AVX2__
