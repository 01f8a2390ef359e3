#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mspec/dynamics.hpp"
#include "mspec/groebner.hpp"
#include "mspec/linalg.hpp"

namespace mspec::rat3 {

// Multiplier of the fourth fixed point of a cubic fixing 0, 1, infinity.
// Raises distinct errors for a unit input multiplier and for the pole where
// the fourth multiplier would be infinite.
template <FieldElement K>
K lambda_alpha(const K &l0, const K &l1, const K &linf) {
    const auto &ctx = l0.ctx();
    for (const K *l : {&l0, &l1, &linf})
        if (*l == ctx.one()) throw DomainError("lambda_alpha: an input multiplier equals 1");
    K s = (ctx.one() - l0).inv() + (ctx.one() - linf).inv() + (ctx.one() - l1).inv() - ctx.one();
    if (s.is_zero()) throw DomainError("lambda_alpha: pole, the fourth multiplier is at infinity");
    return s.inv() + ctx.one();
}

template <FieldElement K>
struct Deg3Invariants {
    K l0, l1, linf, alpha;
    std::optional<K> lbeta;
};

// Coefficient c0 + c1 * alpha.
template <FieldElement K>
struct LinearInAlpha {
    K c0, c1;
    K at(const K &a) const { return c0 + c1 * a; }
};

// The normal form with a_1 = 1, cleared by (1 - l0)(l1 - 1):
// num = A3 z^3 + A2 z^2 + A1 z, den = B2 z^2 + B1 z + B0.
template <FieldElement K>
struct Deg3Coeffs {
    LinearInAlpha<K> A1, A2, A3, B0, B1, B2;
};

template <FieldElement K>
Deg3Coeffs<K> chain_coeffs(const K &l0, const K &l1, const K &linf) {
    const auto &ctx = l0.ctx();
    const K one = ctx.one(), zero = ctx.zero();
    if (l0 == one || l1 == one) throw DomainError("normal form needs l0, l1 != 1");
    const K s = (one - l0) * (l1 - one);
    Deg3Coeffs<K> c;
    // b4 = alpha (linf - 1) / (1 - l0), a3 = l0 b4, b2 = linf
    c.B0 = {zero, (linf - one) * (l1 - one)};
    c.A1 = {zero, l0 * c.B0.c1};
    c.B2 = {linf * s, zero};
    // b3 = ((1 - l1 linf) + (2 - l0 - l1) b4) / (l1 - 1)
    c.B1 = {(one - l0) * (one - l1 * linf), (ctx.from_int(2) - l0 - l1) * (linf - one)};
    // a2 = b2 + b3 + b4 - a1 - a3
    c.A2 = {c.B2.c0 + c.B1.c0 + c.B0.c0 - s - c.A1.c0, c.B2.c1 + c.B1.c1 + c.B0.c1 - c.A1.c1};
    c.A3 = {s, zero};
    return c;
}

namespace detail {

template <FieldElement K>
void check_invariants(const Deg3Invariants<K> &inv) {
    const auto &ctx = inv.l0.ctx();
    for (const K *l : {&inv.l0, &inv.l1, &inv.linf})
        if (*l == ctx.one()) throw DomainError("multipliers must differ from 1");
    if (inv.alpha.is_zero() || inv.alpha == ctx.one()) throw DomainError("alpha must not be 0 or 1");
}

template <FieldElement K>
ProjMap<K> map_from_coeffs(const Deg3Coeffs<K> &c, const K &a) {
    const auto &ctx = a.ctx();
    UniPoly<K> num(ctx, {ctx.zero(), c.A1.at(a), c.A2.at(a), c.A3.at(a)}, "z");
    UniPoly<K> den(ctx, {c.B0.at(a), c.B1.at(a), c.B2.at(a)}, "z");
    return ProjMap<K>(num, den, 3);
}

} // namespace detail

// phi fixing 0, 1, infinity, alpha with multipliers l0, l1, linf and
// lambda_alpha(l0, l1, linf). Every property is checked after construction.
template <FieldElement K>
ProjMap<K> map_from_invariants(const Deg3Invariants<K> &inv) {
    detail::check_invariants(inv);
    const K la = lambda_alpha(inv.l0, inv.l1, inv.linf);
    ProjMap<K> phi = detail::map_from_coeffs(chain_coeffs(inv.l0, inv.l1, inv.linf), inv.alpha);
    const auto &ctx = inv.l0.ctx();
    const std::array<ProjPoint<K>, 4> pts{ProjPoint<K>::affine(ctx.zero()), ProjPoint<K>::affine(ctx.one()),
                                          ProjPoint<K>::infinity(ctx), ProjPoint<K>::affine(inv.alpha)};
    const std::array<K, 4> want{inv.l0, inv.l1, inv.linf, la};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(phi(pts[i]) == pts[i])) throw ValidationError("normal form does not fix " + pts[i].to_string());
        if (!(multiplier_at_point(phi, pts[i], 1) == want[i]))
            throw ValidationError("normal form has the wrong multiplier at " + pts[i].to_string());
    }
    return phi;
}

// The displayed degree-3 normal form, coefficient by coefficient.
template <FieldElement K>
ProjMap<K> normal_form_display(const Deg3Invariants<K> &inv) {
    detail::check_invariants(inv);
    const K &l0 = inv.l0, &l1 = inv.l1, &li = inv.linf, &a = inv.alpha;
    const auto &ctx = l0.ctx();
    const K one = ctx.one(), two = ctx.from_int(2);
    K n3 = (-l1 + one) * l0 + (l1 - one);
    K n2 = ((-a * l1 + one) * l0 + (a - one)) * li + (((a + one) * l1 - two) * l0 + (-l1 + (-a + two)));
    K n1 = (a * l1 - a) * l0 * li + (-a * l1 + a) * l0;
    K d2 = ((-l1 + one) * l0 + (l1 - one)) * li;
    K d1 = ((l1 - a) * l0 + ((-a - one) * l1 + two * a)) * li + ((a - one) * l0 + (a * l1 + (-two * a + one)));
    K d0 = (a * l1 - a) * li + (-a * l1 + a);
    return ProjMap<K>(UniPoly<K>(ctx, {ctx.zero(), n1, n2, n3}, "z"), UniPoly<K>(ctx, {d0, d1, d2}, "z"), 3);
}

// The tau_{3,2} fiber system in (alpha, beta) and its homogenization in
// (alpha : beta : z).
template <FieldElement K>
struct Tau32FiberSystem {
    K l0, l1, linf, lbeta;
    IdealBasis<K> affine;      // vars alpha, beta
    IdealBasis<K> homogeneous; // vars alpha, beta, z
};

namespace detail {

// Polynomials in t with coefficients in K[alpha, beta], lowest degree first.
template <FieldElement K>
using TPoly = std::vector<MultiPoly<K>>;

template <FieldElement K>
TPoly<K> tpoly_mul(const TPoly<K> &a, const TPoly<K> &b) {
    TPoly<K> r(a.size() + b.size() - 1, MultiPoly<K>(a.front().ring(), a.front().ctx()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <FieldElement K>
TPoly<K> tpoly_derivative(const TPoly<K> &a) {
    TPoly<K> r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i].scaled(a[i].ctx().from_int(static_cast<std::int64_t>(i))));
    if (r.empty()) r.push_back(MultiPoly<K>(a.front().ring(), a.front().ctx()));
    return r;
}

// sum_k c_k u^k v^(m-k)
template <FieldElement K>
MultiPoly<K> form_at(const TPoly<K> &c, std::size_t m, const MultiPoly<K> &u, const MultiPoly<K> &v) {
    MultiPoly<K> one = MultiPoly<K>::constant(u.ring(), u.ctx().one());
    std::vector<MultiPoly<K>> up{one}, vp{one};
    for (std::size_t k = 1; k <= m; ++k) {
        up.push_back(up.back() * u);
        vp.push_back(vp.back() * v);
    }
    MultiPoly<K> r(u.ring(), u.ctx());
    for (std::size_t k = 0; k < c.size() && k <= m; ++k)
        if (!c[k].is_zero()) r += c[k] * up[k] * vp[m - k];
    for (std::size_t k = m + 1; k < c.size(); ++k)
        if (!c[k].is_zero()) throw DomainError("form_at: coefficient beyond the formal degree");
    return r;
}

} // namespace detail

// z^deg(g) g(alpha / z, beta / z) in the ring (alpha, beta, z).
template <FieldElement K>
MultiPoly<K> homogenize(const MultiPoly<K> &g, const RingPtr &target) {
    const std::uint32_t deg = g.total_degree();
    std::vector<typename MultiPoly<K>::Term> terms;
    for (const auto &[m, c] : g.terms()) {
        Monomial h;
        for (std::size_t i = 0; i < g.ring()->nvars(); ++i) h.e[i] = m.e[i];
        h.e[g.ring()->nvars()] = static_cast<std::uint16_t>(deg - m.deg);
        h.deg = deg;
        terms.push_back({h, c});
    }
    return MultiPoly<K>::from_terms(target, g.ctx(), std::move(terms));
}

template <FieldElement K>
Tau32FiberSystem<K> build_tau32_system(const K &l0, const K &l1, const K &linf, const K &lbeta) {
    const auto &ctx = l0.ctx();
    const K one = ctx.one();
    for (const K *l : {&l0, &l1, &linf, &lbeta})
        if (*l == one) throw DomainError("tau32 system needs all multipliers != 1");
    if (lbeta == -one) throw DomainError("tau32 system needs lbeta != -1");
    const Deg3Coeffs<K> c = chain_coeffs(l0, l1, linf);

    using MP = MultiPoly<K>;
    RingPtr ring = PolyRing::make({"alpha", "beta"});
    const MP alpha = MP::variable(ring, ctx, 0), beta = MP::variable(ring, ctx, 1);
    auto lin = [&](const LinearInAlpha<K> &x) { return MP::constant(ring, x.c0) + x.c1 * alpha; };
    const MP zero(ring, ctx);
    const detail::TPoly<K> N{zero, lin(c.A1), lin(c.A2), lin(c.A3)};
    const detail::TPoly<K> D{lin(c.B0), lin(c.B1), lin(c.B2), zero};
    // phi' = W / D^2 with W = N' D - N D', formal degree 4
    detail::TPoly<K> W = detail::tpoly_mul(detail::tpoly_derivative(N), D);
    {
        detail::TPoly<K> t = detail::tpoly_mul(N, detail::tpoly_derivative(D));
        for (std::size_t i = 0; i < W.size(); ++i) W[i] -= t[i];
        while (W.size() > 5) {
            if (!W.back().is_zero()) throw DomainError("Wronskian exceeds its formal degree");
            W.pop_back();
        }
    }
    const MP one_mp = MP::constant(ring, one);
    const MP u = detail::form_at(N, 3, beta, one_mp); // N(beta)
    const MP v = detail::form_at(D, 3, beta, one_mp); // D(beta)
    const MP Wb = detail::form_at(W, 4, beta, one_mp);
    const MP Nuv = detail::form_at(N, 3, u, v), Duv = detail::form_at(D, 3, u, v);
    const MP Wuv = detail::form_at(W, 4, u, v);

    MP g1 = Nuv - beta * Duv;
    MP g2 = Wb * Wuv - lbeta * (Duv * Duv);
    if (g1.is_zero() || g2.is_zero()) throw DomainError("tau32 system: a generator vanishes identically");
    if (g1.total_degree() != 9 || g2.total_degree() != 16)
        throw DomainError("tau32 system: leading forms vanish for these parameters");

    RingPtr hring = PolyRing::make({"alpha", "beta", "z"});
    Tau32FiberSystem<K> sys{l0, l1, linf, lbeta, IdealBasis<K>::of({g1, g2}), IdealBasis<K>{}};
    sys.homogeneous = IdealBasis<K>{hring, {homogenize(g1, hring), homogenize(g2, hring)}, false};
    return sys;
}

// P1..P6 as (alpha : beta : z) triples.
template <FieldElement K>
std::array<std::array<K, 3>, 6> degenerate_points(const K &l0, const K &l1, const K &linf) {
    const auto &ctx = l0.ctx();
    const K one = ctx.one(), zero = ctx.zero(), two = ctx.from_int(2);
    const K d4 = one - l1, d5 = one - l0, d6 = l0 * l1 - l0 - l1 + one;
    if (d4.is_zero() || d5.is_zero() || d6.is_zero()) throw DomainError("degenerate points: a denominator vanishes");
    return {{{one, zero, zero},
             {zero, zero, one},
             {one, one, one},
             {zero, (-l1 - linf + two) / d4, one},
             {one, (linf - one) / d5, one},
             {one, -(l0 * l1 * linf - l0 * l1 - linf + one) / d6, zero}}};
}

// Jacobian determinant of the homogeneous system at a projective point, in
// the affine chart of its first nonzero coordinate.
template <FieldElement K>
K chart_jacobian(const IdealBasis<K> &hom, const std::array<K, 3> &p) {
    std::size_t c = 0;
    while (p[c].is_zero()) ++c;
    const auto &ctx = p[0].ctx();
    std::vector<std::string> vars;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < 3; ++i)
        if (i != c) {
            vars.push_back(hom.ring->vars[i]);
            keep.push_back(i);
        }
    RingPtr chart = PolyRing::make(vars);
    std::vector<MultiPoly<K>> img;
    for (std::size_t i = 0, j = 0; i < 3; ++i)
        img.push_back(i == c ? MultiPoly<K>::constant(chart, ctx.one()) : MultiPoly<K>::variable(chart, ctx, j++));
    IdealBasis<K> aff{chart, {hom.gens[0].substitute(img), hom.gens[1].substitute(img)}, false};
    const K inv = p[c].inv();
    return jacobian_det_at(aff, {p[keep[0]] * inv, p[keep[1]] * inv});
}

// phi = z - p/q from the fixed points and their multipliers.
template <FieldElement K>
ProjMap<K> reconstruct_from_fixed_data(const std::vector<ProjPoint<K>> &points, const std::vector<K> &lambdas) {
    if (points.size() != lambdas.size()) throw DomainError("need one multiplier per fixed point");
    if (points.size() < 3) throw DomainError("need at least 3 fixed points (degree >= 2)");
    const std::size_t d = points.size() - 1;
    const auto &ctx = lambdas.front().ctx();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (lambdas[i] == ctx.one()) throw DomainError("a multiplier equals 1");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw DomainError("repeated fixed point " + points[i].to_string());
    }
    std::vector<K> zs, ls;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!points[i].is_infinity()) {
            zs.push_back(points[i].x());
            ls.push_back(lambdas[i]);
        }
    // deg q = d when infinity is not fixed, d - 1 otherwise
    const std::size_t n = zs.size();
    const UniPoly<K> p = UniPoly<K>::from_roots(ctx, zs, "z");
    const UniPoly<K> dp = p.derivative();
    Matrix<K> a(n, std::vector<K>(n, ctx.zero()));
    std::vector<K> rhs(n, ctx.zero());
    for (std::size_t i = 0; i < n; ++i) {
        K s = ctx.one() - ls[i], zp = ctx.one();
        for (std::size_t k = 0; k < n; ++k) {
            a[i][k] = s * zp;
            zp = zp * zs[i];
        }
        rhs[i] = dp.eval(zs[i]);
    }
    auto sol = solve_linear(std::move(a), std::move(rhs));
    if (!sol) throw DomainError("fixed-point system is singular");
    const UniPoly<K> q(ctx, *sol, "z");
    const UniPoly<K> num = UniPoly<K>::x(ctx, "z") * q - p;
    if (num.degree() > static_cast<int>(d) || q.degree() > static_cast<int>(d))
        throw ValidationError("data is not realized by a degree-" + std::to_string(d) + " map");
    std::optional<ProjMap<K>> phi;
    try {
        phi.emplace(num, q, d);
    } catch (const DomainError &) {
        throw ValidationError("data is not realized by a degree-" + std::to_string(d) + " map");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!((*phi)(points[i]) == points[i])) throw ValidationError("reconstructed map does not fix " + points[i].to_string());
        if (!(multiplier_at_point(*phi, points[i], 1) == lambdas[i]))
            throw ValidationError("reconstructed map has the wrong multiplier at " + points[i].to_string());
    }
    return *phi;
}

// The fixed points and multipliers of a map over F_p, or nullopt unless all
// d+1 fixed points are distinct and F_p-rational.
inline std::optional<std::pair<std::vector<ProjPoint<ModP>>, std::vector<ModP>>> fixed_data(const ProjMap<ModP> &phi) {
    const auto &ctx = phi.ctx();
    UniPoly<ModP> fix = UniPoly<ModP>::x(ctx, "z") * phi.den() - phi.num();
    if (fix.is_zero() || fix.degree() < static_cast<int>(phi.degree())) return std::nullopt;
    if (squarefree_part(fix).degree() != fix.degree()) return std::nullopt;
    auto roots = roots_in_prime_field(fix);
    if (static_cast<int>(roots.size()) != fix.degree()) return std::nullopt;
    std::vector<ProjPoint<ModP>> pts;
    for (const auto &r : roots) pts.push_back(ProjPoint<ModP>::affine(r));
    if (fix.degree() == static_cast<int>(phi.degree())) pts.push_back(ProjPoint<ModP>::infinity(ctx));
    std::vector<ModP> ls;
    for (const auto &p : pts) ls.push_back(multiplier_at_point(phi, p, 1));
    return std::make_pair(std::move(pts), std::move(ls));
}

// deg(tau_{3,2}) experiment over F_p.
struct Tau32Draw {
    std::uint64_t prime = 0;
    ModP l0, l1, linf, lbeta;
    std::size_t bezout = 0;      // affine quotient dimension after a generic projective change
    std::size_t affine_dim = 0;  // quotient dimension in the chart z = 1
    std::size_t distinct = 0;    // distinct projective points
    std::size_t degenerate = 0;  // P1..P6 verified on the scheme
    std::size_t simple = 0;      // points with nonzero Jacobian
    std::size_t degree = 0;      // distinct - degenerate
    std::size_t aggregate_p123 = 0;
    bool degenerate_jacobian_zero = false; // P4, P5, P6
    std::size_t simple_alpha_values = 0;   // distinct alpha among the non-degenerate points
};

struct Tau32Report {
    std::vector<Tau32Draw> draws;
    bool agree = true;
    std::optional<std::size_t> disagreeing_draw;
    const Tau32Draw &first() const { return draws.front(); }
};

// One draw with given parameters; prime and specialization fixed by the caller.
Tau32Draw tau32_draw(const PrimeField &F, const ModP &l0, const ModP &l1, const ModP &linf, const ModP &lbeta,
                     std::uint64_t seed, const GroebnerOptions &opts = {});

// Three independent draws in parallel. Specialization values given as
// rationals are reduced mod each prime; missing ones are random.
Tau32Report deg_tau32_report(const std::optional<std::array<Rational, 4>> &lambdas, std::uint64_t seed, int draws = 3,
                             const GroebnerOptions &opts = {});

} // namespace mspec::rat3
