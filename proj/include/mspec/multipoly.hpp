#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mspec/errors.hpp"
#include "mspec/field.hpp"
#include "mspec/unipoly.hpp"

namespace mspec {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector over a fixed variable list (at most kMaxVars variables),
// with its total degree cached.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};
    std::uint32_t deg = 0;

    static Monomial var(std::size_t i, std::uint16_t power = 1) {
        Monomial m;
        m.e[i] = power;
        m.deg = power;
        return m;
    }

    bool is_one() const { return deg == 0; }
    bool divides(const Monomial &o) const {
        if (deg > o.deg) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    bool coprime(const Monomial &o) const {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }
    friend Monomial operator*(const Monomial &a, const Monomial &b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
        r.deg = a.deg + b.deg;
        return r;
    }
    // a / b; b must divide a
    friend Monomial operator/(const Monomial &a, const Monomial &b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
        r.deg = a.deg - b.deg;
        return r;
    }
    static Monomial lcm(const Monomial &a, const Monomial &b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(a.e[i], b.e[i]);
            r.deg += r.e[i];
        }
        return r;
    }
    friend bool operator==(const Monomial &a, const Monomial &b) { return a.e == b.e; }
};

enum class MonomialOrder {
    Lex,       // x0 > x1 > ...
    DegRevLex, // graded reverse lexicographic
    Block,     // first `block` variables eliminated; degrevlex inside each block
};

// Variable list plus the active monomial order.
struct PolyRing {
    std::vector<std::string> vars;
    MonomialOrder order = MonomialOrder::DegRevLex;
    std::size_t block = 0;

    std::size_t nvars() const { return vars.size(); }
    std::size_t index_of(const std::string &name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        throw DomainError("unknown variable '" + name + "'");
    }

    // <0, 0, >0 as a is smaller, equal, larger than b.
    int compare(const Monomial &a, const Monomial &b) const {
        switch (order) {
        case MonomialOrder::Lex: return lex(a, b, 0, vars.size());
        case MonomialOrder::DegRevLex: return grevlex(a, b, 0, vars.size(), a.deg, b.deg);
        case MonomialOrder::Block: {
            std::uint32_t da = 0, db = 0;
            for (std::size_t i = 0; i < block; ++i) {
                da += a.e[i];
                db += b.e[i];
            }
            if (int c = grevlex(a, b, 0, block, da, db)) return c;
            return grevlex(a, b, block, vars.size(), a.deg - da, b.deg - db);
        }
        }
        return 0;
    }

    static std::shared_ptr<const PolyRing> make(std::vector<std::string> vars,
                                                MonomialOrder order = MonomialOrder::DegRevLex, std::size_t block = 0) {
        if (vars.size() > kMaxVars) throw DomainError("too many variables (max " + std::to_string(kMaxVars) + ")");
        return std::make_shared<const PolyRing>(PolyRing{std::move(vars), order, block});
    }

  private:
    static int lex(const Monomial &a, const Monomial &b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
        return 0;
    }
    static int grevlex(const Monomial &a, const Monomial &b, std::size_t lo, std::size_t hi, std::uint32_t da,
                       std::uint32_t db) {
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = hi; i-- > lo;)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
        return 0;
    }
};

using RingPtr = std::shared_ptr<const PolyRing>;

// Sparse multivariate polynomial: terms sorted strictly decreasing in the
// ring's order, no zero coefficients.
template <FieldElement K>
class MultiPoly {
  public:
    using Term = std::pair<Monomial, K>;

    MultiPoly(RingPtr ring, typename K::Ctx ctx) : ring_(std::move(ring)), ctx_(std::move(ctx)) {}

    static MultiPoly constant(RingPtr ring, const K &c) {
        MultiPoly r(std::move(ring), c.ctx());
        if (!c.is_zero()) r.terms_.push_back({Monomial{}, c});
        return r;
    }
    static MultiPoly variable(RingPtr ring, const typename K::Ctx &ctx, std::size_t i) {
        MultiPoly r(std::move(ring), ctx);
        r.terms_.push_back({Monomial::var(i), ctx.one()});
        return r;
    }
    static MultiPoly variable(RingPtr ring, const typename K::Ctx &ctx, const std::string &name) {
        std::size_t i = ring->index_of(name);
        return variable(std::move(ring), ctx, i);
    }
    static MultiPoly term(RingPtr ring, const K &c, const Monomial &m) {
        MultiPoly r(std::move(ring), c.ctx());
        if (!c.is_zero()) r.terms_.push_back({m, c});
        return r;
    }
    // Build from arbitrary (possibly unsorted, repeated) terms.
    static MultiPoly from_terms(RingPtr ring, const typename K::Ctx &ctx, std::vector<Term> terms) {
        MultiPoly r(std::move(ring), ctx);
        r.terms_ = std::move(terms);
        r.normalize();
        return r;
    }

    const RingPtr &ring() const { return ring_; }
    const typename K::Ctx &ctx() const { return ctx_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    const Monomial &lm() const { return terms_.front().first; }
    const K &lc() const { return terms_.front().second; }
    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto &t : terms_) d = std::max(d, t.first.deg);
        return d;
    }
    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto &t : terms_) d = std::max<std::uint32_t>(d, t.first.e[var]);
        return d;
    }
    K coeff(const Monomial &m) const {
        for (const auto &t : terms_)
            if (t.first == m) return t.second;
        return ctx_.zero();
    }

    // Remove and return the leading term.
    Term pop_lead() {
        Term t = std::move(terms_.front());
        terms_.erase(terms_.begin());
        return t;
    }

    MultiPoly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inv());
    }
    MultiPoly scaled(const K &c) const {
        if (c.is_zero()) return MultiPoly(ring_, ctx_);
        MultiPoly r = *this;
        for (auto &t : r.terms_) t.second = t.second * c;
        return r;
    }
    MultiPoly times_monomial(const Monomial &m) const {
        MultiPoly r = *this;
        for (auto &t : r.terms_) t.first = t.first * m;
        return r;
    }

    // this - c * m * g, merging in one pass.
    MultiPoly sub_scaled(const K &c, const Monomial &m, const MultiPoly &g) const {
        MultiPoly r(ring_, ctx_);
        r.terms_.reserve(terms_.size() + g.terms_.size());
        std::size_t i = 0, j = 0;
        const PolyRing &R = *ring_;
        while (i < terms_.size() || j < g.terms_.size()) {
            if (j == g.terms_.size()) {
                r.terms_.push_back(terms_[i++]);
                continue;
            }
            Monomial gm = g.terms_[j].first * m;
            int cmp = i == terms_.size() ? -1 : R.compare(terms_[i].first, gm);
            if (cmp > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp < 0) {
                r.terms_.push_back({gm, -(c * g.terms_[j].second)});
                ++j;
            } else {
                K v = terms_[i].second - c * g.terms_[j].second;
                if (!v.is_zero()) r.terms_.push_back({gm, v});
                ++i;
                ++j;
            }
        }
        return r;
    }

    MultiPoly operator-() const { return scaled(-ctx_.one()); }
    friend MultiPoly operator+(const MultiPoly &a, const MultiPoly &b) {
        return a.sub_scaled(-a.ctx_.one(), Monomial{}, b);
    }
    friend MultiPoly operator-(const MultiPoly &a, const MultiPoly &b) { return a.sub_scaled(a.ctx_.one(), Monomial{}, b); }
    friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto &s : a.terms_)
            for (const auto &t : b.terms_) prod.push_back({s.first * t.first, s.second * t.second});
        return from_terms(a.ring_, a.ctx_, std::move(prod));
    }
    friend MultiPoly operator*(const K &c, const MultiPoly &a) { return a.scaled(c); }
    MultiPoly &operator+=(const MultiPoly &o) { return *this = *this + o; }
    MultiPoly &operator-=(const MultiPoly &o) { return *this = *this - o; }
    MultiPoly &operator*=(const MultiPoly &o) { return *this = *this * o; }
    friend bool operator==(const MultiPoly &a, const MultiPoly &b) { return a.terms_ == b.terms_; }

    MultiPoly pow(std::uint64_t e) const {
        MultiPoly r = constant(ring_, ctx_.one()), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    MultiPoly derivative(std::size_t var) const {
        std::vector<Term> out;
        for (const auto &t : terms_) {
            if (t.first.e[var] == 0) continue;
            Monomial m = t.first;
            K f = t.second * ctx_.from_int(m.e[var]);
            m.e[var]--;
            m.deg--;
            if (!f.is_zero()) out.push_back({m, f});
        }
        return from_terms(ring_, ctx_, std::move(out));
    }

    K eval(const std::vector<K> &point) const {
        if (point.size() != ring_->nvars()) throw DomainError("evaluation point has wrong dimension");
        K s = ctx_.zero();
        for (const auto &t : terms_) {
            K v = t.second;
            for (std::size_t i = 0; i < point.size(); ++i)
                if (t.first.e[i]) v = v * power(point[i], t.first.e[i], ctx_.one());
            s = s + v;
        }
        return s;
    }

    // Substitute images[i] (all in one target ring) for variable i.
    MultiPoly substitute(const std::vector<MultiPoly> &images) const {
        if (images.size() != ring_->nvars()) throw DomainError("substitution has wrong arity");
        const RingPtr &target = images.front().ring();
        // cache powers per variable
        std::vector<std::vector<MultiPoly>> pw(images.size());
        std::vector<Term> acc;
        for (const auto &t : terms_) {
            MultiPoly v = constant(target, t.second);
            for (std::size_t i = 0; i < images.size(); ++i) {
                std::uint16_t k = t.first.e[i];
                if (!k) continue;
                auto &cache = pw[i];
                if (cache.empty()) cache.push_back(constant(target, ctx_.one()));
                while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
                v = v * cache[k];
            }
            acc.insert(acc.end(), v.terms_.begin(), v.terms_.end());
        }
        return from_terms(target, ctx_, std::move(acc));
    }

    // Same polynomial over a ring with the same variables (names matched),
    // possibly in a different order.
    MultiPoly in_ring(const RingPtr &target) const {
        std::vector<std::size_t> map(ring_->nvars());
        for (std::size_t i = 0; i < map.size(); ++i) map[i] = target->index_of(ring_->vars[i]);
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto &t : terms_) {
            Monomial m;
            for (std::size_t i = 0; i < map.size(); ++i) m.e[map[i]] = t.first.e[i];
            m.deg = t.first.deg;
            out.push_back({m, t.second});
        }
        return from_terms(target, ctx_, std::move(out));
    }

    // Univariate view in variable `var` when no other variable occurs.
    UniPoly<K> to_univariate(std::size_t var) const {
        std::vector<K> c(degree_in(var) + 1, ctx_.zero());
        for (const auto &t : terms_) {
            if (t.first.deg != t.first.e[var]) throw DomainError("polynomial is not univariate");
            c[t.first.e[var]] = t.second;
        }
        return UniPoly<K>(ctx_, std::move(c), ring_->vars[var]);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            std::string cs = coeff_text(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs = cs.substr(1);
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            first = false;
            bool unit = cs == "1";
            bool wrote = false;
            if (!unit || m.is_one()) {
                os << cs;
                wrote = true;
            }
            for (std::size_t i = 0; i < ring_->nvars(); ++i) {
                if (!m.e[i]) continue;
                os << (wrote ? "*" : "") << ring_->vars[i];
                if (m.e[i] > 1) os << "^" << m.e[i];
                wrote = true;
            }
        }
        return os.str();
    }

  private:
    static std::string coeff_text(const K &c) {
        if constexpr (is_modp_v<K>) {
            return std::to_string(c.value());
        } else {
            return c.to_string();
        }
    }

    void normalize() {
        const PolyRing &R = *ring_;
        std::sort(terms_.begin(), terms_.end(), [&R](const Term &a, const Term &b) { return R.compare(a.first, b.first) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second = out.back().second + t.second;
            } else {
                if (!out.empty() && out.back().second.is_zero()) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        terms_ = std::move(out);
    }

    RingPtr ring_;
    typename K::Ctx ctx_;
    std::vector<Term> terms_;
};

} // namespace mspec
