#include "mspec/rat3.hpp"

#include <future>
#include <random>

#include "mspec/primes.hpp"
#include "mspec/quotient.hpp"

namespace mspec::rat3 {

namespace {

using MP = MultiPoly<ModP>;

MP jacobian_poly(const MP &f, const MP &g, std::size_t x, std::size_t y) {
    return f.derivative(x) * g.derivative(y) - f.derivative(y) * g.derivative(x);
}

// Top-degree form of g evaluated at (alpha, 1) as a polynomial in alpha.
UniPoly<ModP> top_form_at_beta1(const MP &g) {
    const std::uint32_t deg = g.total_degree();
    std::vector<ModP> c(deg + 1, g.ctx().zero());
    for (const auto &[m, v] : g.terms())
        if (m.deg == deg) c[m.e[0]] = v;
    return UniPoly<ModP>(g.ctx(), std::move(c), "alpha");
}

std::size_t count_distinct(std::vector<MP> gens, std::mt19937_64 &rng, const GroebnerOptions &opts) {
    IdealBasis<ModP> gb = buchberger(IdealBasis<ModP>::of(std::move(gens)), opts);
    if (gb.gens.size() == 1 && gb.gens.front().is_constant()) return 0;
    if (!is_zero_dimensional(gb)) throw DomainError("ideal is not zero-dimensional");
    QuotientAlgebra<ModP> qa(gb, gb.gens.front().ctx());
    return distinct_point_count(qa, rng);
}

bool on_scheme(const IdealBasis<ModP> &hom, const std::array<ModP, 3> &p) {
    for (const auto &g : hom.gens)
        if (!g.eval({p[0], p[1], p[2]}).is_zero()) return false;
    return true;
}

bool same_point(const std::array<ModP, 3> &a, const std::array<ModP, 3> &b) {
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (!(a[i] * b[j] == a[j] * b[i])) return false;
    return true;
}

} // namespace

Tau32Draw tau32_draw(const PrimeField &F, const ModP &l0, const ModP &l1, const ModP &linf, const ModP &lbeta,
                     std::uint64_t seed, const GroebnerOptions &opts) {
    std::mt19937_64 rng(seed);
    Tau32Draw out;
    out.prime = F.p;
    out.l0 = l0;
    out.l1 = l1;
    out.linf = linf;
    out.lbeta = lbeta;
    const auto sys = build_tau32_system(l0, l1, linf, lbeta);
    const MP &g1 = sys.affine.gens[0], &g2 = sys.affine.gens[1];

    // Bezout count: after a random projective change no point lies on the
    // new line at infinity, so the affine quotient sees all of them.
    {
        RingPtr xy = PolyRing::make({"x", "y"});
        for (int attempt = 0;; ++attempt) {
            if (attempt == 8) throw DomainError("no generic coordinate change found");
            Matrix<ModP> m(3, std::vector<ModP>(3));
            for (auto &row : m)
                for (auto &e : row) e = random_element<ModP>(F, rng);
            if (bareiss_det(m, F).is_zero()) continue;
            std::vector<MP> img;
            for (std::size_t i = 0; i < 3; ++i)
                img.push_back(m[i][0] * MP::variable(xy, F, 0) + m[i][1] * MP::variable(xy, F, 1) +
                              MP::constant(xy, m[i][2]));
            std::vector<MP> gens{sys.homogeneous.gens[0].substitute(img), sys.homogeneous.gens[1].substitute(img)};
            // the points at infinity of the new chart are the common zeros of
            // the top forms; a generic change leaves none
            if (gens[0].total_degree() != 9 || gens[1].total_degree() != 16) continue;
            if (gcd(top_form_at_beta1(gens[0]), top_form_at_beta1(gens[1])).degree() > 0) continue;
            auto gb = buchberger(IdealBasis<ModP>::of(std::move(gens)), opts);
            auto dim = quotient_dimension(gb);
            if (!dim) throw DomainError("tau32 system is not zero-dimensional");
            out.bezout = *dim;
            break;
        }
    }

    // chart z = 1
    auto gb = buchberger(sys.affine, opts);
    if (!is_zero_dimensional(gb)) throw DomainError("tau32 system is not zero-dimensional");
    QuotientAlgebra<ModP> qa(gb, F);
    out.affine_dim = qa.dim();
    std::size_t distinct_affine = distinct_point_count(qa, rng);

    // line z = 0: common zeros of the top forms, chart beta = 1 plus (1 : 0 : 0)
    UniPoly<ModP> t1 = top_form_at_beta1(g1), t2 = top_form_at_beta1(g2);
    UniPoly<ModP> common = gcd(t1, t2);
    if (common.is_zero()) throw DomainError("the line z = 0 lies on the scheme");
    std::size_t at_infinity = common.degree() > 0 ? static_cast<std::size_t>(squarefree_part(common).degree()) : 0;
    const bool p100 = t1.coeff(9).is_zero() && t2.coeff(16).is_zero();
    if (p100) ++at_infinity;
    out.distinct = distinct_affine + at_infinity;

    // degenerate points
    const auto P = degenerate_points(l0, l1, linf);
    for (std::size_t i = 0; i < 6; ++i) {
        bool fresh = on_scheme(sys.homogeneous, P[i]);
        for (std::size_t j = 0; j < i && fresh; ++j) fresh = !same_point(P[i], P[j]);
        if (fresh) ++out.degenerate;
    }
    out.degenerate_jacobian_zero = true;
    for (std::size_t i = 3; i < 6; ++i)
        if (!on_scheme(sys.homogeneous, P[i]) || !chart_jacobian(sys.homogeneous, P[i]).is_zero())
            out.degenerate_jacobian_zero = false;

    // points with vanishing Jacobian: chart z = 1, then z = 0 in the chart
    // alpha = 1, then (0 : 1 : 0)
    std::size_t singular = count_distinct({g1, g2, jacobian_poly(g1, g2, 0, 1)}, rng, opts);
    {
        RingPtr bz = PolyRing::make({"beta", "z"});
        std::vector<MP> img{MP::constant(bz, F.one()), MP::variable(bz, F, 0), MP::variable(bz, F, 1)};
        MP h1 = sys.homogeneous.gens[0].substitute(img), h2 = sys.homogeneous.gens[1].substitute(img);
        singular += count_distinct({h1, h2, jacobian_poly(h1, h2, 0, 1), MP::variable(bz, F, 1)}, rng, opts);
    }
    const std::array<ModP, 3> p010{F.zero(), F.one(), F.zero()};
    if (on_scheme(sys.homogeneous, p010) && chart_jacobian(sys.homogeneous, p010).is_zero()) ++singular;
    out.simple = out.distinct - singular;
    out.degree = out.distinct - out.degenerate;
    // P4, P5, P6 have multiplicity 2
    out.aggregate_p123 = out.bezout - out.simple - 2 * 3;

    // alpha values of the non-degenerate affine points
    UniPoly<ModP> ma = squarefree_part(qa.min_poly(qa.variable(0), "alpha"));
    for (const ModP &r : {F.zero(), F.one()}) {
        UniPoly<ModP> lin(F, {-r, F.one()}, "alpha");
        if (ma.eval(r).is_zero()) ma = ma.exact_div(lin);
    }
    out.simple_alpha_values = static_cast<std::size_t>(ma.degree());
    return out;
}

namespace {

bool generic_params(const ModP &l0, const ModP &l1, const ModP &linf, const ModP &lbeta) {
    const PrimeField F{l0.modulus()};
    for (const ModP *l : {&l0, &l1, &linf, &lbeta})
        if (*l == F.one()) return false;
    if (lbeta == -F.one()) return false;
    try {
        ModP la = lambda_alpha(l0, l1, linf);
        (void)la;
        (void)degenerate_points(l0, l1, linf);
    } catch (const DomainError &) {
        return false;
    }
    return true;
}

} // namespace

Tau32Report deg_tau32_report(const std::optional<std::array<Rational, 4>> &lambdas, std::uint64_t seed, int draws,
                             const GroebnerOptions &opts) {
    if (draws < 1) throw DomainError("need at least one draw");
    std::mt19937_64 rng(seed);
    struct Job {
        PrimeField F;
        std::array<ModP, 4> l;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int k = 0; k < draws; ++k) {
        for (int attempt = 0;; ++attempt) {
            if (attempt == 1000) throw DomainError("no prime keeps the specialization generic");
            PrimeField F{random_prime(rng, 31, 31)};
            std::array<ModP, 4> l;
            try {
                for (std::size_t i = 0; i < 4; ++i)
                    l[i] = lambdas ? F.from_rational((*lambdas)[i]) : random_element<ModP>(F, rng);
            } catch (const DomainError &) {
                continue;
            }
            if (!generic_params(l[0], l[1], l[2], l[3])) continue;
            jobs.push_back({F, l, rng()});
            break;
        }
    }
    std::vector<std::future<Tau32Draw>> fut;
    for (const auto &j : jobs)
        fut.push_back(std::async(std::launch::async,
                                 [j, &opts] { return tau32_draw(j.F, j.l[0], j.l[1], j.l[2], j.l[3], j.seed, opts); }));
    Tau32Report rep;
    for (auto &f : fut) rep.draws.push_back(f.get());
    const auto &a = rep.draws.front();
    for (std::size_t k = 1; k < rep.draws.size(); ++k) {
        const auto &b = rep.draws[k];
        bool same = a.bezout == b.bezout && a.distinct == b.distinct && a.degenerate == b.degenerate &&
                    a.simple == b.simple && a.degree == b.degree;
        if (!same && !rep.disagreeing_draw) rep.disagreeing_draw = k;
        rep.agree = rep.agree && same;
    }
    return rep;
}

} // namespace mspec::rat3
