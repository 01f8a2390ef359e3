#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/multipoly.hpp"
#include "mspec/resultant.hpp"

namespace mspec {

// A list of generators, flagged when it is known to be the reduced Groebner
// basis for its ring's monomial order.
template <FieldElement K>
struct IdealBasis {
    RingPtr ring;
    std::vector<MultiPoly<K>> gens;
    bool reduced_gb = false;

    static IdealBasis of(std::vector<MultiPoly<K>> gens) {
        if (gens.empty()) throw DomainError("ideal needs at least one generator");
        RingPtr ring = gens.front().ring();
        return IdealBasis{std::move(ring), std::move(gens), false};
    }
};

struct GroebnerOptions {
    // Maximum number of S-polynomial reductions before giving up.
    std::size_t max_reductions = std::numeric_limits<std::size_t>::max();
};

struct GroebnerStats {
    std::size_t pairs_considered = 0;
    std::size_t reductions = 0;
    std::size_t zero_reductions = 0;
};

// Full reduction of f by the polynomials in g (any list; remainder is unique
// only when g is a Groebner basis).
template <FieldElement K>
MultiPoly<K> reduce_by(const MultiPoly<K> &f, const std::vector<const MultiPoly<K> *> &g) {
    std::vector<typename MultiPoly<K>::Term> done;
    MultiPoly<K> cur = f;
    while (!cur.is_zero()) {
        const Monomial &m = cur.lm();
        const MultiPoly<K> *div = nullptr;
        for (const auto *h : g) {
            if (h->lm().divides(m)) {
                div = h;
                break;
            }
        }
        if (div) {
            K c = cur.lc() / div->lc();
            cur = cur.sub_scaled(c, m / div->lm(), *div);
        } else {
            done.push_back(cur.pop_lead());
        }
    }
    return MultiPoly<K>::from_terms(f.ring(), f.ctx(), std::move(done));
}

template <FieldElement K>
MultiPoly<K> s_polynomial(const MultiPoly<K> &f, const MultiPoly<K> &g) {
    Monomial l = Monomial::lcm(f.lm(), g.lm());
    MultiPoly<K> a = f.times_monomial(l / f.lm()).scaled(f.lc().inv());
    return a.sub_scaled(g.lc().inv(), l / g.lm(), g);
}

namespace detail {

template <FieldElement K>
std::vector<MultiPoly<K>> interreduce(std::vector<MultiPoly<K>> g) {
    // drop elements whose leading monomial is divisible by another's
    std::vector<MultiPoly<K>> min;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            if (g[j].lm().divides(g[i].lm()) && (!(g[j].lm() == g[i].lm()) || j < i)) redundant = true;
        }
        if (!redundant) min.push_back(g[i].monic());
    }
    std::vector<MultiPoly<K>> out;
    for (std::size_t i = 0; i < min.size(); ++i) {
        std::vector<const MultiPoly<K> *> others;
        for (std::size_t j = 0; j < min.size(); ++j)
            if (j != i) others.push_back(&min[j]);
        out.push_back(reduce_by(min[i], others).monic());
    }
    const PolyRing &R = *out.front().ring();
    std::sort(out.begin(), out.end(), [&R](const MultiPoly<K> &a, const MultiPoly<K> &b) { return R.compare(a.lm(), b.lm()) < 0; });
    return out;
}

} // namespace detail

// Reduced Groebner basis by Buchberger's algorithm with the normal selection
// strategy and the Gebauer-Moeller installation of the coprime and chain
// criteria. Generators are first moved into a ring with the requested order.
template <FieldElement K>
IdealBasis<K> buchberger(const IdealBasis<K> &input, const RingPtr &ring, const GroebnerOptions &opts = {},
                         GroebnerStats *stats = nullptr) {
    GroebnerStats local;
    GroebnerStats &st = stats ? *stats : local;
    const PolyRing &R = *ring;

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };
    std::vector<MultiPoly<K>> polys;
    std::vector<bool> active;
    std::vector<Pair> pairs;

    auto update = [&](MultiPoly<K> h) {
        const std::size_t hi = polys.size();
        const Monomial hm = h.lm();
        polys.push_back(std::move(h));
        active.push_back(true);
        // candidate new pairs
        std::vector<Pair> c;
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g]) c.push_back({g, hi, Monomial::lcm(polys[g].lm(), hm)});
        std::vector<Pair> d;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Pair &p = c[k];
            bool keep = polys[p.i].lm().coprime(hm);
            if (!keep) {
                keep = true;
                for (std::size_t k2 = k + 1; k2 < c.size() && keep; ++k2)
                    if (c[k2].lcm.divides(p.lcm)) keep = false;
                for (std::size_t k2 = 0; k2 < d.size() && keep; ++k2)
                    if (d[k2].lcm.divides(p.lcm)) keep = false;
            }
            if (keep) d.push_back(p);
        }
        std::vector<Pair> next;
        for (const Pair &p : pairs) {
            bool drop = hm.divides(p.lcm) && !(Monomial::lcm(polys[p.i].lm(), hm) == p.lcm) &&
                        !(Monomial::lcm(polys[p.j].lm(), hm) == p.lcm);
            if (!drop) next.push_back(p);
        }
        for (const Pair &p : d)
            if (!polys[p.i].lm().coprime(hm)) next.push_back(p);
        pairs = std::move(next);
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g] && hm.divides(polys[g].lm())) active[g] = false;
    };

    auto basis_ptrs = [&]() {
        std::vector<const MultiPoly<K> *> b;
        for (std::size_t g = 0; g < polys.size(); ++g)
            if (active[g]) b.push_back(&polys[g]);
        return b;
    };

    for (const auto &f : input.gens) {
        MultiPoly<K> g = f.ring() == ring ? f : f.in_ring(ring);
        g = reduce_by(g, basis_ptrs());
        if (!g.is_zero()) update(g.monic());
    }
    if (polys.empty()) throw DomainError("ideal generated by zero polynomials");

    while (!pairs.empty()) {
        // normal strategy: smallest lcm first
        auto best = std::min_element(pairs.begin(), pairs.end(), [&R](const Pair &a, const Pair &b) {
            return R.compare(a.lcm, b.lcm) < 0;
        });
        Pair p = *best;
        pairs.erase(best);
        ++st.pairs_considered;
        if (st.reductions >= opts.max_reductions)
            throw BudgetExhausted("Groebner basis step budget of " + std::to_string(opts.max_reductions) + " reductions exhausted");
        ++st.reductions;
        MultiPoly<K> h = reduce_by(s_polynomial(polys[p.i], polys[p.j]), basis_ptrs());
        if (h.is_zero()) {
            ++st.zero_reductions;
            continue;
        }
        update(h.monic());
    }

    std::vector<MultiPoly<K>> g;
    for (std::size_t i = 0; i < polys.size(); ++i)
        if (active[i]) g.push_back(polys[i]);
    return IdealBasis<K>{ring, detail::interreduce(std::move(g)), true};
}

template <FieldElement K>
IdealBasis<K> buchberger(const IdealBasis<K> &input, const GroebnerOptions &opts = {}) {
    return buchberger(input, input.ring, opts);
}

// Remainder of f modulo a reduced Groebner basis; zero iff f is in the ideal.
template <FieldElement K>
MultiPoly<K> normal_form(const MultiPoly<K> &f, const IdealBasis<K> &gb) {
    if (!gb.reduced_gb) throw DomainError("normal_form requires a reduced Groebner basis");
    std::vector<const MultiPoly<K> *> g;
    for (const auto &h : gb.gens) g.push_back(&h);
    MultiPoly<K> ff = f.ring() == gb.ring ? f : f.in_ring(gb.ring);
    return reduce_by(ff, g);
}

// True when every S-polynomial of the list reduces to zero against it.
template <FieldElement K>
bool satisfies_buchberger_criterion(const IdealBasis<K> &gb) {
    std::vector<const MultiPoly<K> *> g;
    for (const auto &h : gb.gens) g.push_back(&h);
    for (std::size_t i = 0; i < gb.gens.size(); ++i)
        for (std::size_t j = i + 1; j < gb.gens.size(); ++j)
            if (!reduce_by(s_polynomial(gb.gens[i], gb.gens[j]), g).is_zero()) return false;
    return true;
}

// Leading monomials of a reduced GB define the staircase; the ideal is
// zero-dimensional iff every variable has a pure power among them.
template <FieldElement K>
bool is_zero_dimensional(const IdealBasis<K> &gb) {
    const std::size_t n = gb.ring->nvars();
    for (std::size_t v = 0; v < n; ++v) {
        bool found = false;
        for (const auto &g : gb.gens)
            if (g.lm().deg == g.lm().e[v]) found = true;
        if (!found) return false;
    }
    return true;
}

// Standard monomials (not divisible by any leading monomial), in BFS order
// from 1 with each one's parent index and the variable that extends it.
struct Staircase {
    std::vector<Monomial> monomials;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> via;
};

template <FieldElement K>
Staircase standard_monomials(const IdealBasis<K> &gb) {
    if (!gb.reduced_gb) throw DomainError("standard monomials need a reduced Groebner basis");
    if (!is_zero_dimensional(gb)) throw DomainError("ideal is not zero-dimensional");
    const std::size_t n = gb.ring->nvars();
    auto in_lt_ideal = [&](const Monomial &m) {
        for (const auto &g : gb.gens)
            if (g.lm().divides(m)) return true;
        return false;
    };
    Staircase s;
    if (in_lt_ideal(Monomial{})) return s; // the unit ideal
    s.monomials.push_back(Monomial{});
    s.parent.push_back(0);
    s.via.push_back(0);
    for (std::size_t k = 0; k < s.monomials.size(); ++k) {
        for (std::size_t v = 0; v < n; ++v) {
            Monomial m = s.monomials[k] * Monomial::var(v);
            if (in_lt_ideal(m)) continue;
            if (std::find(s.monomials.begin(), s.monomials.end(), m) != s.monomials.end()) continue;
            s.monomials.push_back(m);
            s.parent.push_back(k);
            s.via.push_back(v);
        }
    }
    return s;
}

// Number of standard monomials; nullopt when the staircase is unbounded.
template <FieldElement K>
std::optional<std::size_t> quotient_dimension(const IdealBasis<K> &gb) {
    if (!gb.reduced_gb) throw DomainError("quotient_dimension requires a reduced Groebner basis");
    if (!is_zero_dimensional(gb)) return std::nullopt;
    return standard_monomials(gb).monomials.size();
}

// Generators of the elimination ideal in the kept variables, computed with a
// block order that ranks the eliminated variables first. The result lives in
// a degrevlex ring on the kept variables (in their original relative order).
template <FieldElement K>
IdealBasis<K> eliminate(const IdealBasis<K> &gens, const std::vector<std::string> &keep, const GroebnerOptions &opts = {}) {
    const PolyRing &src = *gens.ring;
    std::vector<std::string> elim_vars, kept_vars;
    for (const auto &v : src.vars) {
        if (std::find(keep.begin(), keep.end(), v) != keep.end())
            kept_vars.push_back(v);
        else
            elim_vars.push_back(v);
    }
    for (const auto &k : keep) src.index_of(k);
    std::vector<std::string> all = elim_vars;
    all.insert(all.end(), kept_vars.begin(), kept_vars.end());
    RingPtr block = PolyRing::make(all, MonomialOrder::Block, elim_vars.size());
    IdealBasis<K> gb = buchberger(gens, block, opts);
    RingPtr target = PolyRing::make(kept_vars, MonomialOrder::DegRevLex);
    std::vector<MultiPoly<K>> out;
    for (const auto &g : gb.gens) {
        bool only_kept = true;
        for (std::size_t i = 0; i < elim_vars.size(); ++i)
            if (g.degree_in(i)) only_kept = false;
        if (!only_kept) continue;
        std::vector<typename MultiPoly<K>::Term> terms;
        for (const auto &[m, c] : g.terms()) {
            Monomial mm;
            for (std::size_t i = 0; i < kept_vars.size(); ++i) mm.e[i] = m.e[elim_vars.size() + i];
            mm.deg = m.deg;
            terms.push_back({mm, c});
        }
        out.push_back(MultiPoly<K>::from_terms(target, g.ctx(), std::move(terms)));
    }
    if (out.empty()) out.push_back(MultiPoly<K>(target, gens.gens.front().ctx()));
    // a GB for a block order restricts to a GB of the elimination ideal
    // (degrevlex on the kept block)
    IdealBasis<K> result{target, std::move(out), false};
    if (!result.gens.front().is_zero()) result = buchberger(result, target, opts);
    return result;
}

// Determinant of the Jacobian matrix of a square system at a point on its
// variety.
template <FieldElement K>
K jacobian_det_at(const IdealBasis<K> &gens, const std::vector<K> &point) {
    const std::size_t n = gens.ring->nvars();
    if (gens.gens.size() != n) throw DomainError("jacobian_det_at needs a square system");
    if (point.size() != n) throw DomainError("point has wrong dimension");
    for (const auto &g : gens.gens)
        if (!g.eval(point).is_zero()) throw DomainError("point is not on the variety");
    const auto &ctx = point.front().ctx();
    Matrix<K> j(n, std::vector<K>(n, ctx.zero()));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) j[r][c] = gens.gens[r].derivative(c).eval(point);
    return bareiss_det(std::move(j), ctx);
}

} // namespace mspec
