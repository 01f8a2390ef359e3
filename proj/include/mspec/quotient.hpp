#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/groebner.hpp"
#include "mspec/linalg.hpp"
#include "mspec/unipoly.hpp"

namespace mspec {

// The finite-dimensional algebra K[x]/I of a zero-dimensional ideal, with the
// standard monomials as basis. Elements are dense coordinate rows.
template <FieldElement K>
class QuotientAlgebra {
  public:
    using Row = typename VecOps<K>::Row;

    QuotientAlgebra(IdealBasis<K> gb, typename K::Ctx ctx) : gb_(std::move(gb)), ctx_(ctx), ops_(ctx) {
        stair_ = standard_monomials(gb_);
        const std::size_t n = stair_.monomials.size();
        const std::size_t nv = gb_.ring->nvars();
        cols_.assign(nv, std::vector<Row>(n));
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t j = 0; j < n; ++j) {
                Monomial m = stair_.monomials[j] * Monomial::var(v);
                auto idx = index_of(m);
                if (idx) {
                    Row r = ops_.zeros(n);
                    ops_.set(r, *idx, ctx_.one());
                    cols_[v][j] = std::move(r);
                } else {
                    cols_[v][j] = coords(normal_form(MultiPoly<K>::term(gb_.ring, ctx_.one(), m), gb_));
                }
            }
    }

    std::size_t dim() const { return stair_.monomials.size(); }
    const IdealBasis<K> &basis() const { return gb_; }
    const typename K::Ctx &ctx() const { return ctx_; }
    const VecOps<K> &ops() const { return ops_; }
    const std::vector<Monomial> &standard() const { return stair_.monomials; }

    // Coordinates of a polynomial already in normal form.
    Row coords(const MultiPoly<K> &nf) const {
        Row r = ops_.zeros(dim());
        for (const auto &[m, c] : nf.terms()) {
            auto idx = index_of(m);
            if (!idx) throw DomainError("polynomial is not in normal form");
            ops_.set(r, *idx, c);
        }
        return r;
    }
    Row element(const MultiPoly<K> &f) const { return coords(normal_form(f, gb_)); }
    Row constant(const K &c) const {
        Row r = ops_.zeros(dim());
        if (dim()) ops_.set(r, 0, c);
        return r;
    }
    Row variable(std::size_t v) const { return element(MultiPoly<K>::variable(gb_.ring, ctx_, v)); }

    // x_v * u
    Row mul_var(std::size_t v, const Row &u) const {
        Row out = ops_.zeros(dim());
        for (std::size_t j = 0; j < dim(); ++j)
            if (!ops_.is_zero_at(u, j)) ops_.axpy(out, ops_.get(u, j), cols_[v][j]);
        return out;
    }

    // Columns a * b_j for every standard monomial b_j.
    std::vector<Row> mult_columns(const Row &a) const {
        std::vector<Row> c(dim());
        if (!dim()) return c;
        c[0] = a;
        for (std::size_t j = 1; j < dim(); ++j) c[j] = mul_var(stair_.via[j], c[stair_.parent[j]]);
        return c;
    }

    static Row apply(const VecOps<K> &ops, const std::vector<Row> &cols, const Row &u) {
        Row out = ops.zeros(u.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (!ops.is_zero_at(u, j)) ops.axpy(out, ops.get(u, j), cols[j]);
        return out;
    }

    Row mul(const Row &a, const Row &b) const { return apply(ops_, mult_columns(a), b); }

    // Minimal polynomial of multiplication by a, by Krylov iteration on 1.
    // Since 1 generates the algebra as a module over itself this is the
    // minimal polynomial of the operator.
    UniPoly<K> min_poly(const Row &a, const std::string &var = "t") const {
        return min_poly_from_columns(mult_columns(a), var);
    }

    UniPoly<K> min_poly_from_columns(const std::vector<Row> &cols, const std::string &var = "t") const {
        SpanTracker<K> span(ops_, dim(), dim() + 1);
        Row v = constant(ctx_.one());
        for (std::size_t k = 0; k <= dim(); ++k) {
            auto dep = span.add(v);
            if (dep) return UniPoly<K>(ctx_, std::move(*dep), var).monic();
            v = apply(ops_, cols, v);
        }
        throw DomainError("minimal polynomial search exceeded the algebra dimension");
    }

    // Linear combination sum c_v x_v as an operator (columns).
    std::vector<Row> linear_form_columns(const std::vector<K> &c) const {
        std::vector<Row> cols(dim(), ops_.zeros(dim()));
        for (std::size_t v = 0; v < c.size(); ++v)
            for (std::size_t j = 0; j < dim(); ++j) ops_.axpy(cols[j], c[v], cols_[v][j]);
        return cols;
    }

  private:
    std::optional<std::size_t> index_of(const Monomial &m) const {
        for (std::size_t i = 0; i < stair_.monomials.size(); ++i)
            if (stair_.monomials[i] == m) return i;
        return std::nullopt;
    }

    IdealBasis<K> gb_;
    typename K::Ctx ctx_;
    VecOps<K> ops_;
    Staircase stair_;
    std::vector<std::vector<Row>> cols_;
};

// Number of distinct points of a zero-dimensional ideal over the algebraic
// closure: the squarefree degree of the minimal polynomial of a random linear
// form. A non-separating form can only undercount, so draws continue until
// the largest count seen so far has been observed twice.
template <FieldElement K>
std::size_t distinct_point_count(const QuotientAlgebra<K> &qa, std::mt19937_64 &rng, int max_draws = 12) {
    if (qa.dim() == 0) return 0;
    const std::size_t nv = qa.basis().ring->nvars();
    // small fields separate poorly, so they get a longer search
    const std::uint64_t p = qa.ctx().characteristic();
    const int min_draws = (p == 0 || p > (1u << 20)) ? 2 : 40;
    if (max_draws < min_draws) max_draws = min_draws;
    std::size_t best = 0;
    int hits = 0;
    for (int draw = 0; draw < max_draws; ++draw) {
        std::vector<K> c;
        for (std::size_t v = 0; v < nv; ++v) c.push_back(random_element<K>(qa.ctx(), rng, 1000));
        UniPoly<K> mp = qa.min_poly_from_columns(qa.linear_form_columns(c));
        std::size_t count = static_cast<std::size_t>(squarefree_part(mp).degree());
        if (count > best) {
            best = count;
            hits = 1;
        } else if (count == best) {
            ++hits;
        }
        if ((hits >= 2 && draw + 1 >= min_draws) || best == qa.dim()) return best;
    }
    throw DomainError("separating linear form not found within the retry budget");
}

template <FieldElement K>
std::size_t distinct_point_count(const IdealBasis<K> &gens, std::mt19937_64 &rng, const GroebnerOptions &opts = {}) {
    IdealBasis<K> gb = gens.reduced_gb ? gens : buchberger(gens, opts);
    if (!is_zero_dimensional(gb)) throw DomainError("ideal is not zero-dimensional");
    QuotientAlgebra<K> qa(gb, gb.gens.front().ctx());
    return distinct_point_count(qa, rng);
}

} // namespace mspec
