#include <atomic>
#include <stdexcept>

#include "mspec/kernels.hpp"

namespace mspec::kernels {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend resolve(Backend b) {
    if (b == Backend::Auto) return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    return b;
}

std::atomic<Backend> g_backend{Backend::Auto};

} // namespace

Modulus Modulus::make(std::uint64_t p) {
    Modulus m;
    m.p = p;
    m.small = p < (std::uint64_t{1} << 31);
    m.r_mod_p = (std::uint64_t{1} << 32) % p;
    m.r2_mod_p = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p);
    // Newton iteration for p^{-1} mod 2^32 (p odd)
    std::uint32_t inv = static_cast<std::uint32_t>(p);
    for (int i = 0; i < 5; ++i) inv *= 2u - static_cast<std::uint32_t>(p) * inv;
    m.neg_pinv = static_cast<std::uint32_t>(0u - inv);
    return m;
}

bool avx2_supported() {
    static const bool supported = detect_avx2();
    return supported;
}

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_supported()) throw std::runtime_error("AVX2 kernels requested but not supported by this CPU");
    g_backend.store(b);
}

Backend active_backend() { return resolve(g_backend.load(std::memory_order_relaxed)); }

const char *backend_name(Backend b) {
    switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "?";
}

void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m) {
    if (c == 0) return;
    if (active_backend() == Backend::Avx2) return avx2::axpy_mod(y, c, x, m);
    scalar::axpy_mod(y, c, x, m);
}

std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m) {
    if (active_backend() == Backend::Avx2) return avx2::dot_mod(x, y, m);
    return scalar::dot_mod(x, y, m);
}

void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m) {
    if (active_backend() == Backend::Avx2) return avx2::scale_mod(y, c, m);
    scalar::scale_mod(y, c, m);
}

} // namespace mspec::kernels
