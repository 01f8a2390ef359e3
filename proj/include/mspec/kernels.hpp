#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace mspec::kernels {

// Precomputed data for vector arithmetic modulo an odd prime p < 2^63.
// The Montgomery constants (R = 2^32) are only meaningful when p < 2^31,
// which is the range the vectorized kernels accept.
struct Modulus {
    std::uint64_t p = 0;
    std::uint32_t neg_pinv = 0; // -p^{-1} mod 2^32
    std::uint64_t r_mod_p = 0;  // 2^32 mod p
    std::uint64_t r2_mod_p = 0; // 2^64 mod p
    bool small = false;         // p < 2^31

    static Modulus make(std::uint64_t p);
};

enum class Backend { Auto, Scalar, Avx2 };

// Select the implementation used by the dispatching entry points below.
// Auto picks AVX2 when the CPU supports it. Requesting Avx2 on a machine
// without it throws std::runtime_error.
void set_backend(Backend b);
Backend active_backend();
const char *backend_name(Backend b);
bool avx2_supported();

// y[i] <- y[i] + c * x[i] (mod p); x, y, c in [0, p).
void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m);
// sum x[i] * y[i] (mod p)
std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m);
// y[i] <- c * y[i] (mod p)
void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m);

namespace scalar {
void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m);
std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m);
void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m);
} // namespace scalar

// Compiled with -mavx2; call only when avx2_supported(). Moduli with
// p >= 2^31 are forwarded to the scalar kernels.
namespace avx2 {
void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m);
std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m);
void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m);
} // namespace avx2

} // namespace mspec::kernels
