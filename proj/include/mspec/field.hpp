#pragma once

#include <concepts>
#include <cstdint>
#include <type_traits>

#include "mspec/modp.hpp"
#include "mspec/rational.hpp"

namespace mspec {

// Commutative ring elements that know their context (field, algebra, ...).
template <class R>
concept RingElement = requires(R a, R b) {
    typename R::Ctx;
    { a.ctx() } -> std::convertible_to<typename R::Ctx>;
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

template <class K>
concept FieldElement = RingElement<K> && requires(K a, K b) {
    { a / b } -> std::convertible_to<K>;
    { a.inv() } -> std::convertible_to<K>;
    { a.ctx().characteristic() } -> std::convertible_to<std::uint64_t>;
};

template <class K>
inline constexpr bool is_modp_v = std::is_same_v<K, ModP>;

template <class K>
inline constexpr bool is_rational_v = std::is_same_v<K, Rational>;

// x^e by repeated squaring in any ring, e >= 0.
template <RingElement R>
R power(R base, std::uint64_t e, const R &one) {
    R r = one;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

// Uniform random element: F_p elements are uniform; rationals have
// numerator in [-height, height] and denominator in [1, height].
template <class K, class Rng>
K random_element(const typename K::Ctx &ctx, Rng &rng, std::int64_t height = 20) {
    if constexpr (is_modp_v<K>) {
        std::uniform_int_distribution<std::uint64_t> dist(0, ctx.p - 1);
        return ModP::raw(dist(rng), ctx.p);
    } else {
        std::uniform_int_distribution<std::int64_t> num(-height, height);
        std::uniform_int_distribution<std::int64_t> den(1, height);
        auto n = num(rng);
        auto d = den(rng);
        return Rational(n, d);
    }
}

// Reduce an exact rational into K (identity for Q).
template <class K>
K from_rational(const typename K::Ctx &ctx, const Rational &q) {
    if constexpr (is_modp_v<K>) {
        return ctx.from_rational(q);
    } else {
        (void)ctx;
        return q;
    }
}

} // namespace mspec
