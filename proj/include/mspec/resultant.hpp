#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/unipoly.hpp"

namespace mspec {

template <class R>
using Matrix = std::vector<std::vector<R>>;

namespace detail {

template <RingElement R>
R ring_exact_div(const R &a, const R &b) {
    if constexpr (FieldElement<R>) {
        return a / b;
    } else {
        return a.exact_div(b);
    }
}

} // namespace detail

// Determinant by fraction-free Bareiss elimination. Every division is exact,
// so this works verbatim over integral domains such as K[w].
template <RingElement R>
R bareiss_det(Matrix<R> m, const typename R::Ctx &ctx) {
    const std::size_t n = m.size();
    if (n == 0) return ctx.one();
    bool negate = false;
    R prev = ctx.one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return ctx.zero();
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = detail::ring_exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            }
        }
        prev = m[k][k];
    }
    R det = m[n - 1][n - 1];
    return negate ? -det : det;
}

// Sylvester matrix of f and g read as forms of formal degrees m >= deg f and
// n >= deg g (leading zero coefficients allowed). Rows: n shifted copies of f,
// then m shifted copies of g, coefficients highest degree first.
template <RingElement R>
Matrix<R> sylvester_matrix(const UniPoly<R> &f, std::size_t m, const UniPoly<R> &g, std::size_t n) {
    const auto &ctx = f.base_ctx();
    const std::size_t size = m + n;
    Matrix<R> s(size, std::vector<R>(size, ctx.zero()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f.coeff(m - k);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(n - k);
    return s;
}

// Res(f, g) = lc(f)^deg(g) * prod g(root_i(f)), via Bareiss on the Sylvester
// matrix. Coefficients may live in any integral domain with exact division.
template <RingElement R>
R resultant(const UniPoly<R> &f, const UniPoly<R> &g) {
    const auto &ctx = f.base_ctx();
    if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) return ctx.zero();
    const auto m = static_cast<std::size_t>(f.degree());
    const auto n = static_cast<std::size_t>(g.degree());
    if (m == 0) return power(f.lc(), n, ctx.one());
    if (n == 0) return power(g.lc(), m, ctx.one());
    return bareiss_det(sylvester_matrix(f, m, g, n), ctx);
}

// Resultant of binary forms of formal degrees m and n given by their
// dehomogenized coefficient lists. Vanishes iff the forms share a projective
// root (including a common root at infinity).
template <RingElement R>
R homogeneous_resultant(const UniPoly<R> &f, std::size_t m, const UniPoly<R> &g, std::size_t n) {
    if (f.degree() > static_cast<int>(m) || g.degree() > static_cast<int>(n))
        throw DomainError("homogeneous_resultant: degree exceeds formal degree");
    const auto &ctx = f.base_ctx();
    if (m + n == 0) return ctx.one();
    return bareiss_det(sylvester_matrix(f, m, g, n), ctx);
}

// Resultant in z of two polynomials whose coefficients are polynomials in an
// auxiliary variable w, computed by evaluating w at deg_w_bound + 1 points,
// taking scalar Bareiss resultants and interpolating. The result has degree
// at most deg_w_bound in w. Falls back to Bareiss over K[w] when the field is
// too small to supply enough evaluation points.
template <FieldElement K>
UniPoly<K> resultant_in_aux(const UniPoly<UniPoly<K>> &f, const UniPoly<UniPoly<K>> &g, std::size_t deg_w_bound) {
    const auto &kctx = f.base_ctx().base;
    const std::string wvar = f.base_ctx().var;
    const std::uint64_t p = kctx.characteristic();
    if (p != 0 && p <= deg_w_bound + 1) return resultant(f, g);
    if (f.is_zero() && g.is_zero()) throw DomainError("resultant of two zero polynomials");
    const std::size_t m = static_cast<std::size_t>(std::max(f.degree(), 0));
    const std::size_t n = static_cast<std::size_t>(std::max(g.degree(), 0));

    auto specialize = [&](const UniPoly<UniPoly<K>> &h, const K &w) {
        std::vector<K> c;
        c.reserve(h.size());
        for (const auto &a : h.coeffs()) c.push_back(a.eval(w));
        return UniPoly<K>(kctx, std::move(c), "z");
    };
    std::vector<K> xs, ys;
    for (std::size_t k = 0; k <= deg_w_bound; ++k) {
        K w = kctx.from_int(static_cast<std::int64_t>(k));
        UniPoly<K> fw = specialize(f, w), gw = specialize(g, w);
        // keep the formal degrees so leading-coefficient drops are accounted for
        K r = (m + n == 0) ? kctx.one() : bareiss_det(sylvester_matrix(fw, m, gw, n), kctx);
        xs.push_back(w);
        ys.push_back(r);
    }
    // Newton interpolation
    std::vector<K> dd = ys;
    for (std::size_t j = 1; j < xs.size(); ++j)
        for (std::size_t i = xs.size() - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UniPoly<K> result(kctx, wvar);
    for (std::size_t i = xs.size(); i-- > 0;) {
        result = result * UniPoly<K>(kctx, {-xs[i], kctx.one()}, wvar) + UniPoly<K>::constant(dd[i], wvar);
    }
    return result;
}

} // namespace mspec
