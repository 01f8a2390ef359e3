#include "mspec/primes.hpp"

#include <stdexcept>

#include "mspec/modp.hpp"

namespace mspec {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t random_prime(std::mt19937_64 &rng, int min_bits, int max_bits, std::uint64_t modulus,
                           std::uint64_t residue) {
    if (min_bits < 3 || max_bits > 63 || min_bits > max_bits || modulus == 0)
        throw std::invalid_argument("random_prime: bad bit range");
    std::uniform_int_distribution<int> bits_dist(min_bits, max_bits);
    for (;;) {
        int bits = bits_dist(rng);
        std::uint64_t lo = std::uint64_t{1} << (bits - 1);
        std::uint64_t hi = (bits == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
        std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
        std::uint64_t c = dist(rng);
        c = c - (c % modulus) + residue % modulus;
        if (c < lo || c > hi) continue;
        if (is_prime(c)) return c;
    }
}

} // namespace mspec
