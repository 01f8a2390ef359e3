#include <immintrin.h>

#include "mspec/kernels.hpp"

namespace mspec::kernels::avx2 {

namespace {

// Montgomery reduction of four 62-bit products T (one per 64-bit lane) to
// T * 2^-32 mod p in [0, p). Valid for p < 2^31.
inline __m256i redc(__m256i t, __m256i vp, __m256i vninv) {
    __m256i q = _mm256_mul_epu32(t, vninv); // low 32 bits of t times -p^-1
    __m256i qp = _mm256_mul_epu32(q, vp);   // (q mod 2^32) * p
    __m256i r = _mm256_srli_epi64(_mm256_add_epi64(t, qp), 32);
    // r < 2p < 2^32 so the 32-bit lane trick reduces it
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, vp));
}

inline __m256i add_reduce(__m256i a, __m256i b, __m256i vp) {
    __m256i s = _mm256_add_epi64(a, b);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, vp));
}

inline std::uint64_t to_montgomery(std::uint64_t c, const Modulus &m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) << 32) % m.p);
}

} // namespace

void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m) {
    if (!m.small) return scalar::axpy_mod(y, c, x, m);
    const std::size_t n = y.size();
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(m.p));
    const __m256i vninv = _mm256_set1_epi64x(static_cast<long long>(m.neg_pinv));
    const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(to_montgomery(c, m)));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(x.data() + i));
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(y.data() + i));
        __m256i prod = redc(_mm256_mul_epu32(vc, vx), vp, vninv);
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(y.data() + i), add_reduce(vy, prod, vp));
    }
    if (i < n) scalar::axpy_mod(y.subspan(i), c, x.subspan(i), m);
}

std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m) {
    if (!m.small) return scalar::dot_mod(x, y, m);
    const std::size_t n = x.size();
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(m.p));
    const __m256i vninv = _mm256_set1_epi64x(static_cast<long long>(m.neg_pinv));
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(x.data() + i));
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(y.data() + i));
        // each term < 2^31, so 2^32 terms fit a lane
        acc = _mm256_add_epi64(acc, redc(_mm256_mul_epu32(vx, vy), vp, vninv));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i *>(lanes), acc);
    // accumulated sum carries a factor 2^-32; undo it
    std::uint64_t s = (lanes[0] % m.p + lanes[1] % m.p + lanes[2] % m.p + lanes[3] % m.p) % m.p;
    s = static_cast<std::uint64_t>(static_cast<unsigned __int128>(s) * m.r_mod_p % m.p);
    if (i < n) s = (s + scalar::dot_mod(x.subspan(i), y.subspan(i), m)) % m.p;
    return s;
}

void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m) {
    if (!m.small) return scalar::scale_mod(y, c, m);
    const std::size_t n = y.size();
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(m.p));
    const __m256i vninv = _mm256_set1_epi64x(static_cast<long long>(m.neg_pinv));
    const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(to_montgomery(c, m)));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(y.data() + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i *>(y.data() + i), redc(_mm256_mul_epu32(vc, vy), vp, vninv));
    }
    if (i < n) scalar::scale_mod(y.subspan(i), c, m);
}

} // namespace mspec::kernels::avx2
