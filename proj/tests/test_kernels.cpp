#include "doctest.h"

#include <random>

#include "mspec/kernels.hpp"
#include "mspec/modp.hpp"
#include "mspec/primes.hpp"

using namespace mspec;
using namespace mspec::kernels;

namespace {

std::vector<std::uint64_t> rand_vec(std::mt19937_64 &rng, std::size_t n, std::uint64_t p) {
    std::vector<std::uint64_t> v(n);
    for (auto &x : v) x = rng() % p;
    return v;
}

std::vector<std::uint64_t> primes_under_test(std::mt19937_64 &rng) {
    std::vector<std::uint64_t> ps = {3, 7, 10007, 2147483647ULL, 2147483629ULL, (1ULL << 61) - 1};
    for (int i = 0; i < 6; ++i) ps.push_back(random_prime(rng, 20, 31));
    for (int i = 0; i < 3; ++i) ps.push_back(random_prime(rng, 40, 62));
    return ps;
}

} // namespace

TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(10007));
    CHECK(!is_prime(1));
    CHECK(!is_prime(561));
    CHECK(is_prime((1ULL << 61) - 1));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        auto p = random_prime(rng, 30, 31, 4, 1);
        CHECK(is_prime(p));
        CHECK(p % 4 == 1);
        CHECK(p >= (1ULL << 29));
        CHECK(p < (1ULL << 31));
    }
}

TEST_CASE("Montgomery constants") {
    std::mt19937_64 rng(2);
    for (auto p : primes_under_test(rng)) {
        if (p < 3 || p >= (1ULL << 31)) continue;
        auto m = Modulus::make(p);
        CHECK(m.small);
        CHECK(static_cast<std::uint32_t>(m.neg_pinv * static_cast<std::uint32_t>(p)) == 0xFFFFFFFFu);
        CHECK(m.r_mod_p == (1ULL << 32) % p);
    }
}

TEST_CASE("scalar kernels match the definition") {
    std::mt19937_64 rng(3);
    for (auto p : primes_under_test(rng)) {
        auto m = Modulus::make(p);
        for (std::size_t n : {0, 1, 3, 4, 7, 8, 33}) {
            auto x = rand_vec(rng, n, p), y = rand_vec(rng, n, p);
            std::uint64_t c = rng() % p;
            auto y2 = y;
            scalar::axpy_mod(y2, c, x, m);
            std::uint64_t d = 0;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(y2[i] == (y[i] + detail::mulmod(c, x[i], p)) % p);
                d = (d + detail::mulmod(x[i], y[i], p)) % p;
            }
            CHECK(scalar::dot_mod(x, y, m) == d);
        }
    }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 not available; equivalence test skipped");
        return;
    }
    std::mt19937_64 rng(4);
    for (auto p : primes_under_test(rng)) {
        auto m = Modulus::make(p);
        for (int rep = 0; rep < 20; ++rep) {
            std::size_t n = rng() % 70;
            auto x = rand_vec(rng, n, p), y = rand_vec(rng, n, p);
            std::uint64_t c = rep == 0 ? 0 : (rep == 1 ? p - 1 : rng() % p);
            if (rep == 2) std::fill(x.begin(), x.end(), p - 1);
            auto ys = y, yv = y;
            scalar::axpy_mod(ys, c, x, m);
            avx2::axpy_mod(yv, c, x, m);
            CHECK(ys == yv);
            CHECK(scalar::dot_mod(x, y, m) == avx2::dot_mod(x, y, m));
            ys = y;
            yv = y;
            scalar::scale_mod(ys, c, m);
            avx2::scale_mod(yv, c, m);
            CHECK(ys == yv);
        }
    }
}

TEST_CASE("backend selection") {
    auto before = active_backend();
    set_backend(Backend::Scalar);
    CHECK(active_backend() == Backend::Scalar);
    CHECK(std::string(backend_name(Backend::Scalar)) == "scalar");
    if (avx2_supported()) {
        set_backend(Backend::Avx2);
        CHECK(active_backend() == Backend::Avx2);
    } else {
        CHECK_THROWS(set_backend(Backend::Avx2));
    }
    set_backend(Backend::Auto);
    CHECK(active_backend() != Backend::Auto);
    (void)before;
}
