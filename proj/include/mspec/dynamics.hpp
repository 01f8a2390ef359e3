#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/field.hpp"
#include "mspec/resultant.hpp"
#include "mspec/unipoly.hpp"

namespace mspec {

// A point (x : y) of the projective line, normalized to y = 1, or (1 : 0).
template <FieldElement K>
class ProjPoint {
  public:
    ProjPoint(K x, K y) {
        if (x.is_zero() && y.is_zero()) throw DomainError("(0 : 0) is not a projective point");
        if (y.is_zero()) {
            x_ = x.ctx().one();
            y_ = y;
        } else {
            x_ = x / y;
            y_ = y.ctx().one();
        }
    }
    static ProjPoint affine(const K &x) { return ProjPoint(x, x.ctx().one()); }
    static ProjPoint infinity(const typename K::Ctx &ctx) { return ProjPoint(ctx.one(), ctx.zero()); }

    const K &x() const { return x_; }
    const K &y() const { return y_; }
    bool is_infinity() const { return y_.is_zero(); }
    std::string to_string() const { return is_infinity() ? "inf" : x_.to_string(); }
    friend bool operator==(const ProjPoint &a, const ProjPoint &b) { return a.x_ == b.x_ && a.y_ == b.y_; }

  private:
    K x_, y_;
};

// z -> (m00 z + m01) / (m10 z + m11)
template <FieldElement K>
struct Mobius {
    K m00, m01, m10, m11;

    Mobius(K a, K b, K c, K d) : m00(a), m01(b), m10(c), m11(d) {
        if (det().is_zero()) throw DomainError("degenerate Mobius transformation");
    }
    static Mobius identity(const typename K::Ctx &ctx) { return Mobius(ctx.one(), ctx.zero(), ctx.zero(), ctx.one()); }
    static Mobius translation(const K &t) { return Mobius(t.ctx().one(), t, t.ctx().zero(), t.ctx().one()); }

    K det() const { return m00 * m11 - m01 * m10; }
    Mobius inverse() const { return Mobius(m11, -m01, -m10, m00); }
    // (this o o)(z) = this(o(z))
    Mobius compose(const Mobius &o) const {
        return Mobius(m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
                      m10 * o.m01 + m11 * o.m11);
    }
    ProjPoint<K> operator()(const ProjPoint<K> &p) const {
        return ProjPoint<K>(m00 * p.x() + m01 * p.y(), m10 * p.x() + m11 * p.y());
    }

    // Entries drawn from [-box, box].
    template <class Rng>
    static Mobius random_small(const typename K::Ctx &ctx, Rng &rng, int box = 5) {
        std::uniform_int_distribution<int> dist(-box, box);
        for (;;) {
            K a = ctx.from_int(dist(rng)), b = ctx.from_int(dist(rng)), c = ctx.from_int(dist(rng)),
              d = ctx.from_int(dist(rng));
            if (!(a * d - b * c).is_zero()) return Mobius(a, b, c, d);
        }
    }
};

namespace detail {

// sum_k f_k P^k Q^(d-k): the binary form f of formal degree d evaluated at
// the pair of forms (P, Q), all dehomogenized.
template <FieldElement K>
UniPoly<K> compose_form(const UniPoly<K> &f, std::size_t d, const UniPoly<K> &p, const UniPoly<K> &q) {
    const auto &ctx = f.base_ctx();
    std::vector<UniPoly<K>> ppow{UniPoly<K>::constant(ctx.one(), p.var())};
    std::vector<UniPoly<K>> qpow{UniPoly<K>::constant(ctx.one(), p.var())};
    for (std::size_t k = 1; k <= d; ++k) {
        ppow.push_back(ppow.back() * p);
        qpow.push_back(qpow.back() * q);
    }
    UniPoly<K> r(ctx, p.var());
    for (std::size_t k = 0; k <= d; ++k)
        if (!f.coeff(k).is_zero()) r += f.coeff(k) * (ppow[k] * qpow[d - k]);
    return r;
}

} // namespace detail

// A degree-d endomorphism of P^1 given by coprime binary forms F, G of degree
// d; stored dehomogenized as num(z) = F(z, 1), den(z) = G(z, 1) and scaled so
// that the first nonzero coefficient of a_1..a_{d+1}, b_1..b_{d+1} is 1.
template <FieldElement K>
class ProjMap {
  public:
    ProjMap(UniPoly<K> num, UniPoly<K> den, std::size_t degree, bool check = true)
        : d_(degree), num_(num.with_var("z")), den_(den.with_var("z")) {
        if (d_ < 1) throw DomainError("map degree must be at least 1");
        if (num_.degree() > static_cast<int>(d_) || den_.degree() > static_cast<int>(d_))
            throw DomainError("coefficient degree exceeds the map degree");
        if (check && homogeneous_resultant(num_, d_, den_, d_).is_zero())
            throw DomainError("numerator and denominator forms share a projective root (degree drops)");
        if (num_.is_zero()) throw DomainError("numerator form is zero");
        K s = num_.lc().inv();
        num_ = s * num_;
        den_ = s * den_;
    }

    // Coefficient vectors in descending order: a_1 z^d + ... + a_{d+1}, b_1 z^d + ... + b_{d+1}.
    static ProjMap from_coeffs(const std::vector<K> &a, const std::vector<K> &b) {
        if (a.size() != b.size() || a.size() < 2) throw DomainError("coefficient lists must both have length d+1");
        const std::size_t d = a.size() - 1;
        std::vector<K> n(a.rbegin(), a.rend()), m(b.rbegin(), b.rend());
        const auto &ctx = a.front().ctx();
        return ProjMap(UniPoly<K>(ctx, n, "z"), UniPoly<K>(ctx, m, "z"), d);
    }
    static ProjMap polynomial(const UniPoly<K> &f) {
        if (f.degree() < 1) throw DomainError("polynomial map must have degree at least 1");
        return ProjMap(f, UniPoly<K>::constant(f.base_ctx().one(), "z"), static_cast<std::size_t>(f.degree()));
    }

    std::size_t degree() const { return d_; }
    const UniPoly<K> &num() const { return num_; }
    const UniPoly<K> &den() const { return den_; }
    const typename K::Ctx &ctx() const { return num_.base_ctx(); }
    std::vector<K> a() const { return descending(num_); }
    std::vector<K> b() const { return descending(den_); }
    bool is_polynomial() const { return den_.degree() == 0; }

    ProjPoint<K> operator()(const ProjPoint<K> &p) const {
        // F(x, y) = y^d num(x / y)
        auto form = [&](const UniPoly<K> &f) {
            K s = ctx().zero();
            K xp = ctx().one();
            std::vector<K> ypow{ctx().one()};
            for (std::size_t k = 0; k < d_; ++k) ypow.push_back(ypow.back() * p.y());
            for (std::size_t k = 0; k <= d_; ++k) {
                s = s + f.coeff(k) * xp * ypow[d_ - k];
                xp = xp * p.x();
            }
            return s;
        };
        return ProjPoint<K>(form(num_), form(den_));
    }

    friend bool operator==(const ProjMap &a, const ProjMap &b) {
        return a.d_ == b.d_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

  private:
    std::vector<K> descending(const UniPoly<K> &f) const {
        std::vector<K> out;
        for (std::size_t k = d_ + 1; k-- > 0;) out.push_back(f.coeff(k));
        return out;
    }

    std::size_t d_;
    UniPoly<K> num_, den_;
};

// m^{-1} o phi o m
template <FieldElement K>
ProjMap<K> conjugate(const ProjMap<K> &phi, const Mobius<K> &m) {
    const auto &ctx = phi.ctx();
    const std::size_t d = phi.degree();
    UniPoly<K> p(ctx, {m.m01, m.m00}, "z"), q(ctx, {m.m11, m.m10}, "z");
    UniPoly<K> f = detail::compose_form(phi.num(), d, p, q);
    UniPoly<K> g = detail::compose_form(phi.den(), d, p, q);
    Mobius<K> inv = m.inverse();
    return ProjMap<K>(inv.m00 * f + inv.m01 * g, inv.m10 * f + inv.m11 * g, d, false);
}

// psi o phi
template <FieldElement K>
ProjMap<K> compose(const ProjMap<K> &psi, const ProjMap<K> &phi) {
    UniPoly<K> f = detail::compose_form(psi.num(), psi.degree(), phi.num(), phi.den());
    UniPoly<K> g = detail::compose_form(psi.den(), psi.degree(), phi.num(), phi.den());
    return ProjMap<K>(f, g, psi.degree() * phi.degree(), false);
}

template <FieldElement K>
ProjMap<K> iterate(const ProjMap<K> &phi, unsigned n) {
    if (n < 1) throw DomainError("iterate needs n >= 1");
    ProjMap<K> r = phi;
    for (unsigned k = 1; k < n; ++k) r = compose(phi, r);
    return r;
}

// Monic polynomial whose roots, with multiplicity, are the affine points of
// Per_n(phi). It has degree d^n + 1 exactly when phi is in good position
// (infinity is not in Per_n).
template <FieldElement K>
UniPoly<K> period_polynomial(const ProjMap<K> &phi, unsigned n) {
    ProjMap<K> it = iterate(phi, n);
    UniPoly<K> per = it.num() - UniPoly<K>::x(phi.ctx(), "z") * it.den();
    if (per.is_zero()) throw DomainError("phi^n is the identity");
    return per.monic();
}

template <FieldElement K>
bool in_good_position(const ProjMap<K> &phi, unsigned n) {
    std::uint64_t dn = 1;
    for (unsigned k = 0; k < n; ++k) dn *= phi.degree();
    return period_polynomial(phi, n).degree() == static_cast<int>(dn + 1);
}

template <FieldElement K>
struct Repositioned {
    ProjMap<K> map;
    Mobius<K> m; // map = m^{-1} o phi o m
    int attempts;
};

// Conjugate phi into good position for Per_n by small integer Mobius maps
// (identity first), at most max_attempts tries.
template <FieldElement K>
Repositioned<K> reposition(const ProjMap<K> &phi, unsigned n, int max_attempts = 32, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    std::mt19937_64 rng(seed);
    Mobius<K> m = Mobius<K>::identity(phi.ctx());
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        ProjMap<K> c = attempt == 1 ? phi : conjugate(phi, m);
        ProjMap<K> it = iterate(c, n);
        UniPoly<K> per = it.num() - UniPoly<K>::x(phi.ctx(), "z") * it.den();
        std::uint64_t dn = 1;
        for (unsigned k = 0; k < n; ++k) dn *= phi.degree();
        if (per.degree() == static_cast<int>(dn + 1) && gcd(per, it.den()).degree() == 0) return {c, m, attempt};
        m = Mobius<K>::random_small(phi.ctx(), rng);
    }
    throw DomainError("could not move the map into good position within " + std::to_string(max_attempts) + " attempts");
}

// prod_{P in Per_n(phi)} (w - lambda_P), via Res_z(Per_n, w G_n^2 - (F_n' G_n - F_n G_n')).
template <FieldElement K>
UniPoly<K> multiplier_char_poly(const ProjMap<K> &phi, unsigned n) {
    Repositioned<K> rp = reposition(phi, n);
    ProjMap<K> it = iterate(rp.map, n);
    const auto &ctx = phi.ctx();
    UniPoly<K> per = (it.num() - UniPoly<K>::x(ctx, "z") * it.den()).monic();
    const std::size_t N = static_cast<std::size_t>(per.degree());
    UniPoly<K> g = it.den();
    UniPoly<K> a = (g * g) % per;
    UniPoly<K> b = (it.num().derivative() * g - it.num() * g.derivative()) % per;

    // coefficients in K[w]
    UniPolyCtx<K> wctx{ctx, "w"};
    using PW = UniPoly<K>;
    auto lift = [&](const UniPoly<K> &f) {
        std::vector<PW> c;
        for (const auto &x : f.coeffs()) c.push_back(PW::constant(x, "w"));
        return UniPoly<PW>(wctx, c, "z");
    };
    std::vector<PW> hc;
    PW w = PW::x(ctx, "w");
    const std::size_t len = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < len; ++k) hc.push_back(a.coeff(k) * w - PW::constant(b.coeff(k), "w"));
    UniPoly<PW> h(wctx, hc, "z");
    PW res = resultant_in_aux(lift(per), h, N);
    if (res.degree() != static_cast<int>(N))
        throw DomainError("multiplier resultant has the wrong degree (denominator meets Per_n)");
    return res.monic();
}

// sigma_{n,1..N} with sigma_{n,i} = (-1)^i [w^{N-i}] of the characteristic
// polynomial.
template <FieldElement K>
std::vector<K> sigma_from_char_poly(const UniPoly<K> &cp) {
    const std::size_t N = static_cast<std::size_t>(cp.degree());
    std::vector<K> s;
    for (std::size_t i = 1; i <= N; ++i) {
        K c = cp.coeff(N - i);
        s.push_back(i % 2 ? -c : c);
    }
    return s;
}

template <FieldElement K>
std::vector<K> sigma_n(const ProjMap<K> &phi, unsigned n) {
    return sigma_from_char_poly(multiplier_char_poly(phi, n));
}

template <FieldElement K>
std::vector<std::vector<K>> tau(const ProjMap<K> &phi, unsigned n) {
    std::vector<std::vector<K>> out;
    for (unsigned k = 1; k <= n; ++k) out.push_back(sigma_n(phi, k));
    return out;
}

// (phi^n)'(P) by the chain rule, in a chart containing the whole orbit.
template <FieldElement K>
K multiplier_at_point(const ProjMap<K> &phi, const ProjPoint<K> &p, unsigned n) {
    if (n < 1) throw DomainError("multiplier_at_point needs n >= 1");
    const auto &ctx = phi.ctx();
    std::vector<ProjPoint<K>> orbit{p};
    for (unsigned k = 0; k < n; ++k) orbit.push_back(phi(orbit.back()));
    if (!(orbit.back() == p)) throw DomainError("point is not periodic with period dividing n");
    orbit.pop_back();

    ProjMap<K> psi = phi;
    std::vector<K> zs;
    bool has_inf = false;
    for (const auto &q : orbit) has_inf = has_inf || q.is_infinity();
    if (has_inf) {
        // m(w) = (c w + 1) / w sends 0 to infinity; c must avoid the orbit
        std::int64_t c = 0;
        for (;; ++c) {
            bool clash = false;
            for (const auto &q : orbit)
                if (!q.is_infinity() && q.x() == ctx.from_int(c)) clash = true;
            if (!clash) break;
            if (ctx.characteristic() && static_cast<std::uint64_t>(c) > ctx.characteristic())
                throw DomainError("no chart avoids the orbit");
        }
        Mobius<K> m(ctx.from_int(c), ctx.one(), ctx.one(), ctx.zero());
        psi = conjugate(phi, m);
        Mobius<K> minv = m.inverse();
        for (const auto &q : orbit) zs.push_back(minv(q).x());
    } else {
        for (const auto &q : orbit) zs.push_back(q.x());
    }
    const UniPoly<K> &f = psi.num(), &g = psi.den();
    UniPoly<K> fd = f.derivative(), gd = g.derivative();
    K lam = ctx.one();
    for (const auto &z : zs) {
        K gz = g.eval(z);
        lam = lam * (fd.eval(z) * gz - f.eval(z) * gd.eval(z)) / (gz * gz);
    }
    return lam;
}

template <FieldElement K>
struct RelationResidual {
    K theorem;                    // sum_{i=0}^{d} (-1)^i (d-i) sigma_i + (-1)^{d+2} sigma_{d+1}
    std::optional<K> polynomial;  // same with sigma_{d+1} forced to 0
};

template <FieldElement K>
RelationResidual<K> sigma1_relation_residual(const std::vector<K> &sigma, std::size_t d, bool is_polynomial) {
    if (sigma.size() != d + 1) throw DomainError("level-1 sigma vector must have length d+1");
    const auto &ctx = sigma.front().ctx();
    K s = ctx.from_int(static_cast<std::int64_t>(d)); // i = 0 term, sigma_0 = 1
    for (std::size_t i = 1; i <= d; ++i) {
        K t = ctx.from_int(static_cast<std::int64_t>(d - i)) * sigma[i - 1];
        s = i % 2 ? s - t : s + t;
    }
    K last = (d % 2 == 0) ? sigma[d] : -sigma[d];
    RelationResidual<K> r{s + last, std::nullopt};
    if (is_polynomial) r.polynomial = s;
    return r;
}

// A random valid degree-d map with coefficients from random_element.
template <FieldElement K, class Rng>
ProjMap<K> random_map(const typename K::Ctx &ctx, std::size_t d, Rng &rng, std::int64_t height = 20) {
    for (;;) {
        std::vector<K> n, m;
        for (std::size_t k = 0; k <= d; ++k) {
            n.push_back(random_element<K>(ctx, rng, height));
            m.push_back(random_element<K>(ctx, rng, height));
        }
        UniPoly<K> num(ctx, n, "z"), den(ctx, m, "z");
        if (num.is_zero() || homogeneous_resultant(num, d, den, d).is_zero()) continue;
        return ProjMap<K>(num, den, d, false);
    }
}

template <FieldElement K, class Rng>
ProjMap<K> random_polynomial_map(const typename K::Ctx &ctx, std::size_t d, Rng &rng, std::int64_t height = 20) {
    for (;;) {
        std::vector<K> n;
        for (std::size_t k = 0; k < d; ++k) n.push_back(random_element<K>(ctx, rng, height));
        K lc = random_element<K>(ctx, rng, height);
        if (lc.is_zero()) continue;
        n.push_back(lc);
        return ProjMap<K>::polynomial(UniPoly<K>(ctx, n, "z"));
    }
}

} // namespace mspec
