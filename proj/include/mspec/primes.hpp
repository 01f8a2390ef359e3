#pragma once

#include <cstdint>
#include <random>

namespace mspec {

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Uniformly random prime with bit length in [min_bits, max_bits] and
// p = residue (mod modulus). Requires 3 <= min_bits <= max_bits <= 63.
std::uint64_t random_prime(std::mt19937_64 &rng, int min_bits, int max_bits,
                           std::uint64_t modulus = 1, std::uint64_t residue = 0);

} // namespace mspec
