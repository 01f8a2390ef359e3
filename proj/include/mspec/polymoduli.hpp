#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mspec/dynamics.hpp"
#include "mspec/groebner.hpp"
#include "mspec/quotient.hpp"

namespace mspec::poly {

// sum 1/(1 - lambda_i) over the affine fixed points; zero for every
// polynomial with distinct fixed points (infinity has multiplier 0).
template <FieldElement K>
K index_sum(const std::vector<K> &lambdas) {
    const auto &ctx = lambdas.front().ctx();
    K s = ctx.zero();
    for (const auto &l : lambdas) {
        K t = ctx.one() - l;
        if (t.is_zero()) throw DomainError("multiplier 1 is not allowed (multiple fixed point)");
        s = s + t.inv();
    }
    return s;
}

// The multiplier forced on the last affine fixed point by the others.
template <FieldElement K>
K implied_multiplier(const std::vector<K> &others) {
    K s = index_sum(others);
    if (s.is_zero()) throw DomainError("implied multiplier is at infinity");
    return s.ctx().one() + s.inv();
}

// Affine multipliers read from a user list: d+1 values include the 0 at
// infinity, d values are all affine, d-1 values leave the last one implied.
template <FieldElement K>
struct AffineMultipliers {
    std::vector<K> lambdas; // exactly d
    bool implied_last = false;
    bool consistent = true; // index relation holds
};

template <FieldElement K>
AffineMultipliers<K> read_multipliers(std::size_t d, std::vector<K> given) {
    if (given.empty()) throw DomainError("no multipliers given");
    AffineMultipliers<K> out;
    if (given.size() == d + 1) {
        auto it = std::find_if(given.begin(), given.end(), [](const K &x) { return x.is_zero(); });
        if (it == given.end()) throw DomainError("a polynomial's multiplier list with d+1 entries must contain the 0 at infinity");
        given.erase(it);
    } else if (given.size() + 1 == d) {
        given.push_back(implied_multiplier(given));
        out.implied_last = true;
    } else if (given.size() != d) {
        throw DomainError("expected d-1, d or d+1 multipliers for degree " + std::to_string(d));
    }
    out.consistent = index_sum(given).is_zero();
    out.lambdas = std::move(given);
    return out;
}

template <FieldElement K>
struct FixedConfigSystem {
    std::size_t d = 0;
    std::vector<K> lambdas;
    std::optional<std::size_t> dropped; // index of the equation left out
    IdealBasis<K> ideal;
};

// F_i(z) - (lambda_i - 1) for every i except `drop`, with F_i = prod_{j != i}
// (z_i - z_j), plus z_1 + ... + z_d.
template <FieldElement K>
FixedConfigSystem<K> build_fixed_config_system(std::size_t d, const std::vector<K> &lambdas,
                                               std::optional<std::size_t> drop = std::nullopt) {
    if (d < 2 || d > kMaxVars) throw DomainError("degree must be between 2 and " + std::to_string(kMaxVars));
    if (lambdas.size() != d) throw DomainError("expected exactly d affine multipliers");
    const auto &ctx = lambdas.front().ctx();
    for (const auto &l : lambdas)
        if (l == ctx.one()) throw DomainError("multiplier 1 is not allowed (multiple fixed point)");
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= d; ++i) vars.push_back("z" + std::to_string(i));
    RingPtr ring = PolyRing::make(vars);
    using MP = MultiPoly<K>;
    std::vector<MP> z;
    for (std::size_t i = 0; i < d; ++i) z.push_back(MP::variable(ring, ctx, i));
    std::vector<MP> gens;
    for (std::size_t i = 0; i < d; ++i) {
        if (drop && *drop == i) continue;
        MP f = MP::constant(ring, ctx.one());
        for (std::size_t j = 0; j < d; ++j)
            if (j != i) f *= z[i] - z[j];
        gens.push_back(f - MP::constant(ring, lambdas[i] - ctx.one()));
    }
    MP s(ring, ctx);
    for (auto &v : z) s += v;
    gens.push_back(s);
    return {d, lambdas, drop, IdealBasis<K>::of(std::move(gens))};
}

// Primitive k-th root of unity in F_p (k | p - 1).
inline ModP primitive_root_of_unity(const PrimeField &F, std::uint64_t k) {
    if (k == 0 || (F.p - 1) % k) throw DomainError("no primitive root of unity of that order");
    std::vector<std::uint64_t> primes;
    std::uint64_t m = k;
    for (std::uint64_t q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            primes.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t g = 2; g < F.p; ++g) {
        ModP z = ModP::raw(g, F.p).pow((F.p - 1) / k);
        bool ok = true;
        for (auto q : primes)
            if (z.pow(k / q) == F.one()) ok = false;
        if (ok) return z;
    }
    throw DomainError("no primitive root of unity found");
}

template <FieldElement K>
struct ConfigCount {
    std::size_t solutions = 0;
    std::size_t classes = 0;
    std::size_t quotient_dim = 0;
    std::optional<bool> zeta_closed; // checked when the roots of unity exist
};

// Solve one system: distinct solutions, the zeta_{d-1} closure check, and
// the class count.
template <FieldElement K>
ConfigCount<K> count_system(const FixedConfigSystem<K> &sys, std::mt19937_64 &rng, const GroebnerOptions &opts = {}) {
    const std::size_t d = sys.d;
    IdealBasis<K> gb = buchberger(sys.ideal, opts);
    auto dim = quotient_dimension(gb);
    if (!dim) throw DomainError("fixed-point system is not zero-dimensional (non-generic multipliers)");
    ConfigCount<K> out;
    out.quotient_dim = *dim;
    QuotientAlgebra<K> qa(gb, sys.lambdas.front().ctx());
    out.solutions = distinct_point_count(qa, rng);
    if constexpr (is_modp_v<K>) {
        const PrimeField F = sys.lambdas.front().ctx();
        if (d >= 3 && (F.p - 1) % (d - 1) == 0) {
            ModP zeta = primitive_root_of_unity(F, d - 1);
            std::vector<MultiPoly<ModP>> img;
            for (std::size_t i = 0; i < d; ++i)
                img.push_back(MultiPoly<ModP>::term(gb.ring, zeta, Monomial::var(i)));
            bool closed = true;
            for (const auto &g : sys.ideal.gens)
                if (!normal_form(g.substitute(img), gb).is_zero()) closed = false;
            out.zeta_closed = closed;
        }
    }
    const std::size_t orbit = d - 1;
    if (out.solutions % orbit) throw DomainError("solution count is not divisible by d-1 (non-generic specialization)");
    out.classes = out.solutions / orbit;
    return out;
}

template <FieldElement K>
struct ConfigCountResult {
    std::size_t solutions = 0;
    std::size_t classes = 0;
    bool consistent = true;
    std::vector<K> lambdas;
    // one entry per system solved: the full system when the multipliers are
    // consistent, otherwise each square system with one equation dropped
    struct Part {
        std::optional<std::size_t> dropped;
        std::optional<K> implied; // multiplier implied for the dropped point
        ConfigCount<K> count;
    };
    std::vector<Part> parts;
};

template <FieldElement K>
ConfigCountResult<K> count_fixed_configurations(std::size_t d, const std::vector<K> &given, std::mt19937_64 &rng,
                                                const GroebnerOptions &opts = {}) {
    if (d < 2 || d > 5) throw DomainError("count_fixed_configurations supports degrees 2 to 5");
    auto am = read_multipliers(d, given);
    ConfigCountResult<K> out;
    out.consistent = am.consistent;
    out.lambdas = am.lambdas;
    if (am.consistent) {
        auto sys = build_fixed_config_system(d, am.lambdas);
        out.parts.push_back({std::nullopt, std::nullopt, count_system(sys, rng, opts)});
    } else {
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<K> others;
            for (std::size_t i = 0; i < d; ++i)
                if (i != j) others.push_back(am.lambdas[i]);
            K implied = implied_multiplier(others);
            std::vector<K> ls = am.lambdas;
            ls[j] = implied;
            auto sys = build_fixed_config_system(d, ls, j);
            out.parts.push_back({j, implied, count_system(sys, rng, opts)});
        }
    }
    out.solutions = out.parts.front().count.solutions;
    out.classes = out.parts.front().count.classes;
    for (const auto &p : out.parts)
        if (p.count.solutions != out.solutions)
            throw DomainError("drop-one systems disagree on the number of solutions");
    return out;
}

// z + prod (z - z_i), translated to remove the z^{d-1} term.
template <FieldElement K>
UniPoly<K> poly_from_fixed_points(const std::vector<K> &roots) {
    if (roots.empty()) throw DomainError("no fixed points given");
    const auto &ctx = roots.front().ctx();
    K s = ctx.zero();
    for (const auto &r : roots) s = s + r;
    if (!s.is_zero()) throw DomainError("fixed points must sum to zero");
    UniPoly<K> z = UniPoly<K>::x(ctx, "z");
    UniPoly<K> f = z + UniPoly<K>::from_roots(ctx, roots, "z");
    const std::size_t d = roots.size();
    K sub = f.coeff(d - 1);
    if (!sub.is_zero()) {
        // phi(z) -> phi(z - t) + t with t = sub / d
        K t = sub / ctx.from_int(static_cast<std::int64_t>(d));
        UniPoly<K> shift(ctx, {-t, ctx.one()}, "z");
        f = f.compose(shift) + UniPoly<K>::constant(t, "z");
    }
    return f;
}

// (6 - 3a, 9 - 6a, 9a - 12a^2 + 4a^3 + 27b^2, 0)
template <FieldElement K>
std::vector<K> tau31_phi_ab(const K &a, const K &b) {
    const auto &c = a.ctx();
    auto n = [&](std::int64_t v) { return c.from_int(v); };
    return {n(6) - n(3) * a, n(9) - n(6) * a, n(9) * a - n(12) * a * a + n(4) * a * a * a + n(27) * b * b, c.zero()};
}

template <FieldElement K>
struct P3Candidate {
    K a;
    K b2_times_27;
    std::string fixed_point_case; // "three distinct", "two distinct", "one"
};

template <FieldElement K>
std::vector<P3Candidate<K>> p3_from_sigma1(const std::vector<K> &l) {
    if (l.size() != 3) throw DomainError("expected the three affine multipliers");
    const auto &c = l.front().ctx();
    auto n = [&](std::int64_t v) { return c.from_int(v); };
    std::size_t ones = 0;
    for (const auto &x : l) ones += x == c.one();
    // triple fixed point at 0: phi(z) - z = z^3
    if (ones == 3) return {{c.one(), c.zero(), "one"}};
    if (ones == 2) {
        K lam = l[0] == c.one() ? (l[1] == c.one() ? l[2] : l[1]) : l[0];
        K t = (lam - c.one()) / n(9);
        return {{c.one() - (lam - c.one()) / n(3), n(108) * t * t * t, "two distinct"}};
    }
    if (ones == 1) throw DomainError("a single multiplier equal to 1 cannot occur for a cubic");
    const K &l1 = l[0], &l2 = l[1];
    K den = n(3) * l1 + (n(3) * l2 - n(6));
    if (den.is_zero()) throw DomainError("denominator 3*l1 + 3*l2 - 6 vanishes (non-generic multipliers)");
    K a = -(l1 * l1 + (l2 - n(6)) * l1 + (l2 * l2 - n(6) * l2 + n(9))) / den;
    K s1 = l[0] + l[1] + l[2];
    K s2 = l[0] * l[1] + l[0] * l[2] + l[1] * l[2];
    K s3 = l[0] * l[1] * l[2];
    return {{a, s3 - s2 * a + s1 * a * a - a * a * a, "three distinct"}};
}

// Report on whether sigma_2 separates the conjugacy classes in a fiber of
// the level-1 map, computed without leaving the base field.
struct Sigma2Part {
    std::optional<std::size_t> dropped;
    std::string implied;
    std::size_t solutions = 0;
    std::size_t classes = 0;
    std::size_t quotient_dim = 0;
    std::size_t distinct_sigma2 = 0;
    bool separated = false;
};

struct Sigma2Report {
    std::size_t d = 0;
    std::uint64_t prime = 0;
    bool consistent = true;
    std::vector<Sigma2Part> parts;
    bool separated = false; // every part separated its classes
};

// Over F_p with p = 1 mod (d-1).
Sigma2Report sigma2_discrimination(std::size_t d, const std::vector<ModP> &given, std::mt19937_64 &rng,
                                   const GroebnerOptions &opts = {});

// Count distinct sigma_2 values among the points of the quotient algebra of
// a fixed-configuration system.
std::size_t distinct_sigma2_values(const QuotientAlgebra<ModP> &qa, std::size_t d, std::mt19937_64 &rng);

// Multi-prime protocols: each draw picks a fresh prime p = 1 mod (d-1) in
// [2^30, 2^31) and either reduces the given rational multipliers or draws a
// random specialization satisfying the index relation.
struct CountDraw {
    std::uint64_t prime = 0;
    std::vector<ModP> lambdas;
    ConfigCountResult<ModP> result;
};

struct CountProtocol {
    std::size_t d = 0;
    std::vector<CountDraw> draws;
    std::size_t solutions = 0;
    std::size_t classes = 0;
    bool agree = true;
};

CountProtocol count_protocol(std::size_t d, const std::optional<std::vector<Rational>> &lambdas, std::uint64_t seed,
                             int draws = 3, const GroebnerOptions &opts = {});

struct Sigma2Protocol {
    std::size_t d = 0;
    std::vector<Sigma2Report> draws;
    bool agree = true;
    bool separated = false;
};

Sigma2Protocol sigma2_protocol(std::size_t d, const std::optional<std::vector<Rational>> &lambdas, std::uint64_t seed,
                               int draws = 3, const GroebnerOptions &opts = {});

// Prime p = 1 mod (d-1) with p > d^2 in [2^30, 2^31) for which every given
// rational reduces and no affine multiplier becomes 1.
std::uint64_t pick_prime(std::mt19937_64 &rng, std::size_t d, const std::optional<std::vector<Rational>> &lambdas);

// d-1 uniform multipliers and the one they imply.
std::vector<ModP> random_consistent_multipliers(const PrimeField &F, std::size_t d, std::mt19937_64 &rng);

} // namespace mspec::poly
