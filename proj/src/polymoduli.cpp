#include "mspec/polymoduli.hpp"

#include "mspec/primes.hpp"

namespace mspec::poly {

namespace {

using Row = std::vector<std::uint64_t>;
using APoly = std::vector<Row>; // coefficients in the quotient algebra, lowest degree first

struct AlgebraPolys {
    const QuotientAlgebra<ModP> &qa;
    const VecOps<ModP> &ops;
    std::size_t D;

    explicit AlgebraPolys(const QuotientAlgebra<ModP> &q) : qa(q), ops(q.ops()), D(q.dim()) {}

    Row zero() const { return ops.zeros(D); }
    Row one() const { return qa.constant(qa.ctx().one()); }

    void trim(APoly &p) const {
        while (!p.empty() && ops.is_zero(p.back())) p.pop_back();
    }

    // out += a * b, with a given by its multiplication columns
    void mul_acc(Row &out, const std::vector<Row> &acols, const Row &b) const {
        for (std::size_t k = 0; k < D; ++k)
            if (b[k]) ops.axpy(out, ModP::raw(b[k], qa.ctx().p), acols[k]);
    }

    std::vector<std::vector<Row>> columns(const APoly &p) const {
        std::vector<std::vector<Row>> c;
        c.reserve(p.size());
        for (const auto &x : p) c.push_back(qa.mult_columns(x));
        return c;
    }

    APoly mul(const APoly &a, const std::vector<std::vector<Row>> &acols, const APoly &b) const {
        if (a.empty() || b.empty()) return {};
        APoly out(a.size() + b.size() - 1, zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) mul_acc(out[i + j], acols[i], b[j]);
        trim(out);
        return out;
    }
    APoly mul(const APoly &a, const APoly &b) const { return mul(a, columns(a), b); }

    APoly add(APoly a, const APoly &b) const {
        if (b.size() > a.size()) a.resize(b.size(), zero());
        for (std::size_t i = 0; i < b.size(); ++i) ops.axpy(a[i], qa.ctx().one(), b[i]);
        trim(a);
        return a;
    }

    APoly scale(const std::vector<Row> &ccols, const APoly &p) const {
        APoly out(p.size(), zero());
        for (std::size_t i = 0; i < p.size(); ++i) mul_acc(out[i], ccols, p[i]);
        trim(out);
        return out;
    }

    // p mod m for monic m
    APoly rem_monic(APoly p, const APoly &m, const std::vector<std::vector<Row>> &mcols) const {
        const std::size_t n = m.size() - 1;
        const ModP minus_one = -qa.ctx().one();
        while (p.size() > n) {
            Row c = p.back();
            const std::size_t shift = p.size() - 1 - n;
            for (std::size_t k = 0; k < n; ++k) {
                Row t = zero();
                mul_acc(t, mcols[k], c);
                ops.axpy(p[shift + k], minus_one, t);
            }
            p.pop_back();
            trim(p);
        }
        return p;
    }

    APoly derivative(const APoly &p) const {
        APoly out;
        for (std::size_t k = 1; k < p.size(); ++k) {
            Row r = p[k];
            ops.scale(r, qa.ctx().from_int(static_cast<std::int64_t>(k)));
            out.push_back(std::move(r));
        }
        trim(out);
        return out;
    }

    // sum_k f_k g^k
    APoly compose(const APoly &f, const APoly &g) const {
        APoly out;
        APoly gk = {one()};
        auto gcols = columns(g);
        for (std::size_t k = 0; k < f.size(); ++k) {
            out = add(out, scale(qa.mult_columns(f[k]), gk));
            if (k + 1 < f.size()) gk = mul(g, gcols, gk);
        }
        return out;
    }
};

} // namespace

std::size_t distinct_sigma2_values(const QuotientAlgebra<ModP> &qa, std::size_t d, std::mt19937_64 &rng) {
    AlgebraPolys A(qa);
    const PrimeField F = qa.ctx();
    // phi(z) = z + prod (z - z_i) with z_i the coordinate functions
    APoly prod = {A.one()};
    for (std::size_t i = 0; i < d; ++i) {
        Row zi = qa.variable(i);
        A.ops.scale(zi, -F.one());
        prod = A.mul(prod, APoly{zi, A.one()});
    }
    APoly phi = A.add(prod, APoly{A.zero(), A.one()});
    APoly per = A.add(A.compose(phi, phi), APoly{A.zero(), qa.constant(-F.one())});
    const std::size_t N = per.size() - 1;
    if (N != d * d || !(per.back() == A.one())) throw DomainError("period polynomial over the quotient algebra is not monic of degree d^2");
    auto percols = A.columns(per);
    APoly dphi = A.derivative(phi);
    APoly h = A.rem_monic(A.mul(A.compose(dphi, phi), dphi), per, percols);
    auto hcols = A.columns(h);

    // traces of z^j in A[z]/(per) from Newton's identities
    std::vector<Row> tr(N, A.zero());
    tr[0] = qa.constant(F.from_int(static_cast<std::int64_t>(N)));
    for (std::size_t k = 1; k < N; ++k) {
        Row pk = per[N - k];
        A.ops.scale(pk, -F.from_int(static_cast<std::int64_t>(k)));
        for (std::size_t i = 1; i < k; ++i) {
            Row t = A.zero();
            A.mul_acc(t, percols[N - i], tr[k - i]);
            A.ops.axpy(pk, -F.one(), t);
        }
        tr[k] = pk;
    }
    std::vector<std::vector<Row>> trcols;
    for (const auto &t : tr) trcols.push_back(qa.mult_columns(t));

    // power sums Tr(h^k), k = 1..N
    std::vector<Row> psums;
    APoly hk = h;
    for (std::size_t k = 1; k <= N; ++k) {
        Row s = A.zero();
        for (std::size_t j = 0; j < hk.size(); ++j) A.mul_acc(s, trcols[j], hk[j]);
        psums.push_back(std::move(s));
        if (k < N) hk = A.rem_monic(A.mul(h, hcols, hk), per, percols);
    }

    // random combinations; an unlucky draw can only merge values
    std::size_t best = 0;
    int hits = 0;
    for (int draw = 0; draw < 12; ++draw) {
        Row s = A.zero();
        for (const auto &p : psums) A.ops.axpy(s, random_element<ModP>(F, rng), p);
        std::size_t count = static_cast<std::size_t>(squarefree_part(qa.min_poly(s)).degree());
        if (count > best) {
            best = count;
            hits = 1;
        } else if (count == best) {
            ++hits;
        }
        if (hits >= 2) return best;
    }
    throw DomainError("sigma_2 value count did not stabilize");
}

Sigma2Report sigma2_discrimination(std::size_t d, const std::vector<ModP> &given, std::mt19937_64 &rng,
                                   const GroebnerOptions &opts) {
    if (d != 4 && d != 5) throw DomainError("sigma2_discrimination supports degrees 4 and 5");
    const PrimeField F = given.front().ctx();
    if (F.p <= d * d) throw DomainError("prime too small for power-sum discrimination");
    auto am = read_multipliers(d, given);
    Sigma2Report rep;
    rep.d = d;
    rep.prime = F.p;
    rep.consistent = am.consistent;
    auto run = [&](const FixedConfigSystem<ModP> &sys, std::optional<ModP> implied) {
        IdealBasis<ModP> gb = buchberger(sys.ideal, opts);
        auto dim = quotient_dimension(gb);
        if (!dim) throw DomainError("fixed-point system is not zero-dimensional (non-generic multipliers)");
        QuotientAlgebra<ModP> qa(gb, F);
        Sigma2Part part;
        part.dropped = sys.dropped;
        if (implied) part.implied = std::to_string(implied->value());
        part.quotient_dim = *dim;
        part.solutions = distinct_point_count(qa, rng);
        if (part.solutions % (d - 1)) throw DomainError("solution count is not divisible by d-1 (non-generic specialization)");
        part.classes = part.solutions / (d - 1);
        part.distinct_sigma2 = distinct_sigma2_values(qa, d, rng);
        part.separated = part.distinct_sigma2 == part.classes;
        rep.parts.push_back(part);
    };
    if (am.consistent) {
        run(build_fixed_config_system(d, am.lambdas), std::nullopt);
    } else {
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<ModP> others;
            for (std::size_t i = 0; i < d; ++i)
                if (i != j) others.push_back(am.lambdas[i]);
            ModP implied = implied_multiplier(others);
            std::vector<ModP> ls = am.lambdas;
            ls[j] = implied;
            run(build_fixed_config_system(d, ls, j), implied);
        }
    }
    rep.separated = true;
    for (const auto &p : rep.parts) rep.separated = rep.separated && p.separated;
    return rep;
}

std::uint64_t pick_prime(std::mt19937_64 &rng, std::size_t d, const std::optional<std::vector<Rational>> &lambdas) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::uint64_t p = random_prime(rng, 31, 31, d > 2 ? d - 1 : 1, d > 2 ? 1 : 0);
        if (!lambdas) return p;
        PrimeField F{p};
        try {
            std::vector<ModP> red;
            for (const auto &q : *lambdas) red.push_back(F.from_rational(q));
            read_multipliers(d, red); // rejects multipliers that reduce to 1
            return p;
        } catch (const DomainError &) {
            continue;
        }
    }
    throw DomainError("no suitable prime found");
}

std::vector<ModP> random_consistent_multipliers(const PrimeField &F, std::size_t d, std::mt19937_64 &rng) {
    for (;;) {
        std::vector<ModP> ls;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            ModP l = random_element<ModP>(F, rng);
            if (l == F.one()) break;
            ls.push_back(l);
        }
        if (ls.size() + 1 != d) continue;
        try {
            ls.push_back(implied_multiplier(ls));
        } catch (const DomainError &) {
            continue;
        }
        if (ls.back() == F.one()) continue;
        return ls;
    }
}

namespace {

std::vector<ModP> specialize(const PrimeField &F, std::size_t d, const std::optional<std::vector<Rational>> &lambdas,
                             std::mt19937_64 &rng) {
    if (!lambdas) return random_consistent_multipliers(F, d, rng);
    std::vector<ModP> out;
    for (const auto &q : *lambdas) out.push_back(F.from_rational(q));
    return out;
}

} // namespace

CountProtocol count_protocol(std::size_t d, const std::optional<std::vector<Rational>> &lambdas, std::uint64_t seed,
                             int draws, const GroebnerOptions &opts) {
    std::mt19937_64 rng(seed);
    CountProtocol out;
    out.d = d;
    for (int k = 0; k < draws; ++k) {
        std::uint64_t p = pick_prime(rng, d, lambdas);
        PrimeField F{p};
        CountDraw draw;
        draw.prime = p;
        draw.lambdas = specialize(F, d, lambdas, rng);
        draw.result = count_fixed_configurations(d, draw.lambdas, rng, opts);
        out.draws.push_back(std::move(draw));
    }
    out.solutions = out.draws.front().result.solutions;
    out.classes = out.draws.front().result.classes;
    for (const auto &dr : out.draws)
        out.agree = out.agree && dr.result.solutions == out.solutions && dr.result.classes == out.classes;
    return out;
}

Sigma2Protocol sigma2_protocol(std::size_t d, const std::optional<std::vector<Rational>> &lambdas, std::uint64_t seed,
                               int draws, const GroebnerOptions &opts) {
    std::mt19937_64 rng(seed);
    Sigma2Protocol out;
    out.d = d;
    out.separated = true;
    for (int k = 0; k < draws; ++k) {
        std::uint64_t p = pick_prime(rng, d, lambdas);
        PrimeField F{p};
        out.draws.push_back(sigma2_discrimination(d, specialize(F, d, lambdas, rng), rng, opts));
        out.separated = out.separated && out.draws.back().separated;
    }
    for (const auto &r : out.draws) {
        if (r.parts.size() != out.draws.front().parts.size()) out.agree = false;
        for (std::size_t i = 0; i < r.parts.size() && out.agree; ++i) {
            const auto &a = r.parts[i], &b = out.draws.front().parts[i];
            out.agree = a.classes == b.classes && a.distinct_sigma2 == b.distinct_sigma2;
        }
    }
    return out;
}

} // namespace mspec::poly
