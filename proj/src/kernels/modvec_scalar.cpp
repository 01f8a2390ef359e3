#include "mspec/kernels.hpp"

namespace mspec::kernels::scalar {

namespace {
using u128 = unsigned __int128;
}

void axpy_mod(std::span<std::uint64_t> y, std::uint64_t c, std::span<const std::uint64_t> x, const Modulus &m) {
    const std::uint64_t p = m.p;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = static_cast<std::uint64_t>((static_cast<u128>(c) * x[i] + y[i]) % p);
    }
}

std::uint64_t dot_mod(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const Modulus &m) {
    const std::uint64_t p = m.p;
    u128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += static_cast<u128>(x[i]) * y[i];
        // 2^126 / p^2 terms fit; fold well before that
        if ((i & 31) == 31) acc %= p;
    }
    return static_cast<std::uint64_t>(acc % p);
}

void scale_mod(std::span<std::uint64_t> y, std::uint64_t c, const Modulus &m) {
    for (auto &v : y) v = static_cast<std::uint64_t>(static_cast<u128>(c) * v % m.p);
}

} // namespace mspec::kernels::scalar
