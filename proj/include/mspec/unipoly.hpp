#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/field.hpp"

namespace mspec {

template <RingElement R>
class UniPoly;

// Context of a univariate polynomial ring R[var]; lets UniPoly itself act as a
// coefficient ring (resultants with polynomial entries).
template <RingElement R>
struct UniPolyCtx {
    typename R::Ctx base;
    std::string var = "x";

    UniPoly<R> zero() const;
    UniPoly<R> one() const;
    UniPoly<R> from_int(std::int64_t n) const;
    bool operator==(const UniPolyCtx &) const = default;
};

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
template <RingElement R>
class UniPoly {
  public:
    using Ctx = UniPolyCtx<R>;
    using Coeff = R;

    explicit UniPoly(typename R::Ctx ctx, std::string var = "x") : ctx_(std::move(ctx)), var_(std::move(var)) {}
    UniPoly(typename R::Ctx ctx, std::vector<R> coeffs, std::string var = "x")
        : ctx_(std::move(ctx)), var_(std::move(var)), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly constant(const R &c, std::string var = "x") {
        return UniPoly(c.ctx(), std::vector<R>{c}, std::move(var));
    }
    static UniPoly monomial(const R &c, std::size_t k, std::string var = "x") {
        std::vector<R> v(k + 1, c.ctx().zero());
        v[k] = c;
        return UniPoly(c.ctx(), std::move(v), std::move(var));
    }
    static UniPoly x(const typename R::Ctx &ctx, std::string var = "x") {
        return monomial(ctx.one(), 1, std::move(var));
    }
    // Monic polynomial with the given roots, with multiplicity.
    static UniPoly from_roots(const typename R::Ctx &ctx, const std::vector<R> &roots, std::string var = "x") {
        UniPoly r = constant(ctx.one(), var);
        for (const auto &a : roots) r = r * UniPoly(ctx, {-a, ctx.one()}, var);
        return r;
    }

    Ctx ctx() const { return Ctx{ctx_, var_}; }
    const typename R::Ctx &base_ctx() const { return ctx_; }
    const std::string &var() const { return var_; }
    UniPoly with_var(std::string v) const {
        UniPoly r = *this;
        r.var_ = std::move(v);
        return r;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<R> &coeffs() const { return c_; }

    R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : ctx_.zero(); }
    const R &operator[](std::size_t k) const { return c_[k]; }
    R lc() const { return c_.empty() ? ctx_.zero() : c_.back(); }
    R trailing_coeff() const { return c_.empty() ? ctx_.zero() : c_.front(); }

    R eval(const R &x) const {
        R r = ctx_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UniPoly derivative() const {
        std::vector<R> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * ctx_.from_int(static_cast<std::int64_t>(k)));
        return UniPoly(ctx_, std::move(d), var_);
    }

    // f(g(x)) by Horner.
    UniPoly compose(const UniPoly &g) const {
        UniPoly r(ctx_, var_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(*it, var_);
        return r.with_var(g.var_);
    }

    UniPoly operator-() const {
        std::vector<R> v;
        v.reserve(c_.size());
        for (const auto &a : c_) v.push_back(-a);
        return UniPoly(ctx_, std::move(v), var_);
    }
    UniPoly &operator+=(const UniPoly &o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ctx_.zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
        trim();
        return *this;
    }
    UniPoly &operator-=(const UniPoly &o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), ctx_.zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly &b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly &b) { return a -= b; }
    friend UniPoly operator*(const UniPoly &a, const UniPoly &b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.ctx_, a.var_);
        std::vector<R> v(a.c_.size() + b.c_.size() - 1, a.ctx_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(a.ctx_, std::move(v), a.var_);
    }
    friend UniPoly operator*(const R &s, const UniPoly &a) {
        std::vector<R> v;
        v.reserve(a.c_.size());
        for (const auto &x : a.c_) v.push_back(s * x);
        return UniPoly(a.ctx_, std::move(v), a.var_);
    }
    UniPoly &operator*=(const UniPoly &o) { return *this = *this * o; }

    friend bool operator==(const UniPoly &a, const UniPoly &b) { return a.c_ == b.c_; }

    UniPoly pow(std::uint64_t e) const { return power(*this, e, constant(ctx_.one(), var_)); }

    // Multiply by x^k.
    UniPoly shift(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<R> v(k, ctx_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return UniPoly(ctx_, std::move(v), var_);
    }

    // Quotient and remainder; requires the divisor's leading coefficient to be
    // invertible (always true over a field).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly &d) const
        requires FieldElement<R>
    {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        UniPoly r = *this;
        if (r.degree() < d.degree()) return {UniPoly(ctx_, var_), r};
        std::vector<R> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), ctx_.zero());
        R inv_lc = d.lc().inv();
        const auto dd = static_cast<std::size_t>(d.degree());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree()) - dd;
            R f = r.lc() * inv_lc;
            q[shift] = f;
            for (std::size_t k = 0; k <= dd; ++k) r.c_[shift + k] = r.c_[shift + k] - f * d.c_[k];
            r.trim();
        }
        return {UniPoly(ctx_, std::move(q), var_), r};
    }
    UniPoly operator%(const UniPoly &d) const requires FieldElement<R> { return divmod(d).second; }

    // Division that must be exact; works over any ring whose coefficients
    // support exact division (fields, and polynomial rings over fields).
    UniPoly exact_div(const UniPoly &d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        UniPoly r = *this;
        if (r.is_zero()) return r;
        if (r.degree() < d.degree()) throw DomainError("inexact polynomial division");
        std::vector<R> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), ctx_.zero());
        const auto dd = static_cast<std::size_t>(d.degree());
        while (!r.is_zero()) {
            if (r.degree() < d.degree()) throw DomainError("inexact polynomial division");
            std::size_t shift = static_cast<std::size_t>(r.degree()) - dd;
            R f = exact_quotient(r.lc(), d.lc());
            q[shift] = f;
            for (std::size_t k = 0; k <= dd; ++k) r.c_[shift + k] = r.c_[shift + k] - f * d.c_[k];
            r.trim();
        }
        return UniPoly(ctx_, std::move(q), var_);
    }

    UniPoly monic() const requires FieldElement<R> {
        if (is_zero()) return *this;
        return lc().inv() * *this;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const R &a = c_[static_cast<std::size_t>(k)];
            if (a.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << a.to_string() << ")";
            if (k >= 1) os << "*" << var_;
            if (k >= 2) os << "^" << k;
        }
        return os.str();
    }

  private:
    static R exact_quotient(const R &a, const R &b) {
        if constexpr (FieldElement<R>) {
            return a / b;
        } else {
            return a.exact_div(b);
        }
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    typename R::Ctx ctx_;
    std::string var_ = "x";
    std::vector<R> c_;
};

template <RingElement R>
UniPoly<R> UniPolyCtx<R>::zero() const { return UniPoly<R>(base, var); }
template <RingElement R>
UniPoly<R> UniPolyCtx<R>::one() const { return UniPoly<R>::constant(base.one(), var); }
template <RingElement R>
UniPoly<R> UniPolyCtx<R>::from_int(std::int64_t n) const { return UniPoly<R>::constant(base.from_int(n), var); }

// Monic gcd; gcd(0, 0) = 0.
template <FieldElement K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
    if (a.base_ctx() != b.base_ctx()) throw DomainError("gcd: field mismatch");
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// (base^e) mod m.
template <FieldElement K>
UniPoly<K> powmod(UniPoly<K> base, std::uint64_t e, const UniPoly<K> &m) {
    UniPoly<K> r = UniPoly<K>::constant(m.base_ctx().one(), m.var()) % m;
    base = base % m;
    while (e) {
        if (e & 1) r = (r * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return r;
}

// Monic polynomial with the same roots as f, each simple. In characteristic
// p a vanishing derivative means f(x) = g(x^p) = g(x)^p over F_p, and we
// descend to g.
template <FieldElement K>
UniPoly<K> squarefree_part(const UniPoly<K> &f) {
    if (f.is_zero()) throw DomainError("squarefree_part of the zero polynomial");
    if (f.degree() == 0) return UniPoly<K>::constant(f.base_ctx().one(), f.var());
    const std::uint64_t p = f.base_ctx().characteristic();
    UniPoly<K> df = f.derivative();
    if (df.is_zero()) {
        // only reachable in characteristic p
        std::vector<K> g;
        for (std::size_t k = 0; k < f.size(); k += p) g.push_back(f[k]);
        return squarefree_part(UniPoly<K>(f.base_ctx(), std::move(g), f.var()));
    }
    UniPoly<K> g = gcd(f, df);
    UniPoly<K> r = f.exact_div(g).monic(); // radical of the part whose multiplicities are prime to p
    if (p != 0) {
        // roots whose multiplicity is divisible by p survive in g but not in r
        UniPoly<K> rest = g;
        UniPoly<K> common = gcd(rest, r);
        while (common.degree() > 0) {
            rest = rest.exact_div(common);
            common = gcd(rest, r);
        }
        if (rest.degree() > 0) {
            UniPoly<K> extra = squarefree_part(rest);
            r = (r * extra.exact_div(gcd(extra, r))).monic();
        }
    }
    return r;
}

// Distinct roots in F_p of f (any f, nonzero), ascending.
std::vector<ModP> roots_in_prime_field(const UniPoly<ModP> &f, std::uint64_t seed = 0x5eed);

} // namespace mspec
