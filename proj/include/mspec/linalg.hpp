#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/field.hpp"
#include "mspec/kernels.hpp"
#include "mspec/resultant.hpp"
#include "mspec/unipoly.hpp"

namespace mspec {

// Dense vector arithmetic over a field. Over F_p rows are raw residues so the
// vector kernels can run on them; over Q rows hold Rationals.
template <FieldElement K>
class VecOps;

template <>
class VecOps<ModP> {
  public:
    using Row = std::vector<std::uint64_t>;

    explicit VecOps(PrimeField f) : field_(f), mod_(kernels::Modulus::make(f.p)) {}

    const PrimeField &field() const { return field_; }
    Row zeros(std::size_t n) const { return Row(n, 0); }
    ModP get(const Row &r, std::size_t i) const { return ModP::raw(r[i], field_.p); }
    void set(Row &r, std::size_t i, const ModP &v) const { r[i] = v.value(); }
    bool is_zero_at(const Row &r, std::size_t i) const { return r[i] == 0; }
    void axpy(Row &y, const ModP &c, const Row &x) const { kernels::axpy_mod(y, c.value(), x, mod_); }
    void scale(Row &y, const ModP &c) const { kernels::scale_mod(y, c.value(), mod_); }
    ModP dot(const Row &x, const Row &y) const { return ModP::raw(kernels::dot_mod(x, y, mod_), field_.p); }
    bool is_zero(const Row &r) const {
        for (auto v : r)
            if (v) return false;
        return true;
    }

  private:
    PrimeField field_;
    kernels::Modulus mod_;
};

template <>
class VecOps<Rational> {
  public:
    using Row = std::vector<Rational>;

    explicit VecOps(RationalField f = {}) : field_(f) {}

    const RationalField &field() const { return field_; }
    Row zeros(std::size_t n) const { return Row(n, Rational(0)); }
    Rational get(const Row &r, std::size_t i) const { return r[i]; }
    void set(Row &r, std::size_t i, const Rational &v) const { r[i] = v; }
    bool is_zero_at(const Row &r, std::size_t i) const { return r[i].is_zero(); }
    void axpy(Row &y, const Rational &c, const Row &x) const {
        if (c.is_zero()) return;
        for (std::size_t i = 0; i < y.size(); ++i)
            if (!x[i].is_zero()) y[i] += c * x[i];
    }
    void scale(Row &y, const Rational &c) const {
        for (auto &v : y) v *= c;
    }
    Rational dot(const Row &x, const Row &y) const {
        Rational s(0);
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    }
    bool is_zero(const Row &r) const {
        for (const auto &v : r)
            if (!v.is_zero()) return false;
        return true;
    }

  private:
    RationalField field_;
};

// Incremental row echelon form that also tracks, for every stored row, its
// expression in terms of the vectors added so far. Adding a vector that is
// already in the span yields the linear dependency.
template <FieldElement K>
class SpanTracker {
  public:
    using Row = typename VecOps<K>::Row;

    SpanTracker(VecOps<K> ops, std::size_t dim, std::size_t max_vectors)
        : ops_(std::move(ops)), dim_(dim), max_(max_vectors) {}

    // Returns coefficients c_0..c_{k} (c_k = 1 for the new vector) with
    // sum c_i v_i = 0 if v is dependent on the previous vectors; otherwise
    // stores v and returns nullopt.
    std::optional<std::vector<K>> add(Row v) {
        const std::size_t k = count_++;
        Row comb = ops_.zeros(max_);
        ops_.set(comb, k, ops_.field().one());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::size_t pc = pivots_[r];
            if (ops_.is_zero_at(v, pc)) continue;
            K f = -ops_.get(v, pc);
            ops_.axpy(v, f, rows_[r]);
            ops_.axpy(comb, f, combs_[r]);
        }
        std::size_t pc = 0;
        while (pc < dim_ && ops_.is_zero_at(v, pc)) ++pc;
        if (pc == dim_) {
            std::vector<K> out;
            for (std::size_t i = 0; i <= k; ++i) out.push_back(ops_.get(comb, i));
            return out;
        }
        K inv = ops_.get(v, pc).inv();
        ops_.scale(v, inv);
        ops_.scale(comb, inv);
        rows_.push_back(std::move(v));
        combs_.push_back(std::move(comb));
        pivots_.push_back(pc);
        return std::nullopt;
    }

    std::size_t rank() const { return rows_.size(); }

  private:
    VecOps<K> ops_;
    std::size_t dim_;
    std::size_t max_;
    std::size_t count_ = 0;
    std::vector<Row> rows_, combs_;
    std::vector<std::size_t> pivots_;
};

// Solve the square system A x = b by Gaussian elimination; nullopt when A is
// singular.
template <FieldElement K>
std::optional<std::vector<K>> solve_linear(Matrix<K> a, std::vector<K> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        K inv = a[col][col].inv();
        for (std::size_t j = col; j < n; ++j) a[col][j] = a[col][j] * inv;
        b[col] = b[col] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            K f = a[r][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
            b[r] = b[r] - f * b[col];
        }
    }
    return b;
}

// Characteristic polynomial det(w I - M) of a square matrix, via the
// Hessenberg reduction. Used as an independent route in tests and oracles.
template <FieldElement K>
UniPoly<K> char_poly(Matrix<K> m, const typename K::Ctx &ctx, const std::string &var = "w") {
    const std::size_t n = m.size();
    // reduce to upper Hessenberg form by similarity transforms
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && m[piv][j].is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap(m[piv], m[j + 1]);
            for (std::size_t r = 0; r < n; ++r) std::swap(m[r][piv], m[r][j + 1]);
        }
        K inv = m[j + 1][j].inv();
        for (std::size_t i = j + 2; i < n; ++i) {
            if (m[i][j].is_zero()) continue;
            K f = m[i][j] * inv;
            for (std::size_t c = 0; c < n; ++c) m[i][c] = m[i][c] - f * m[j + 1][c];
            for (std::size_t r = 0; r < n; ++r) m[r][j + 1] = m[r][j + 1] + f * m[r][i];
        }
    }
    // recurrence on leading principal submatrices
    std::vector<UniPoly<K>> p;
    p.push_back(UniPoly<K>::constant(ctx.one(), var));
    UniPoly<K> w = UniPoly<K>::x(ctx, var);
    for (std::size_t k = 0; k < n; ++k) {
        UniPoly<K> next = (w - UniPoly<K>::constant(m[k][k], var)) * p[k];
        K prod = ctx.one();
        for (std::size_t i = k; i-- > 0;) {
            prod = prod * m[i + 1][i];
            next = next - UniPoly<K>::constant(prod * m[i][k], var) * p[i];
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

} // namespace mspec
