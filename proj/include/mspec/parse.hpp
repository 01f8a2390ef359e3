#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mspec/dynamics.hpp"
#include "mspec/scalar.hpp"

namespace mspec {

// p(z) / q(z), kept in lowest terms with q monic.
template <FieldElement K>
struct RatFunc {
    UniPoly<K> num, den;

    static RatFunc make(UniPoly<K> n, UniPoly<K> d) {
        if (d.is_zero()) throw DomainError("division by zero polynomial");
        if (n.is_zero()) return {n, UniPoly<K>::constant(d.base_ctx().one(), d.var())};
        UniPoly<K> g = gcd(n, d);
        n = n.exact_div(g);
        d = d.exact_div(g);
        K s = d.lc().inv();
        return {s * n, s * d};
    }
    friend RatFunc operator+(const RatFunc &a, const RatFunc &b) { return make(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b) { return make(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b) { return make(a.num * b.num, a.den * b.den); }
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b) {
        if (b.num.is_zero()) throw DomainError("division by zero");
        return make(a.num * b.den, a.den * b.num);
    }
};

namespace detail {

// Recursive-descent parser for + - * / ^, parentheses, implicit
// multiplication, integer literals, the variable and named parameters.
template <FieldElement K>
class ExprParser {
  public:
    ExprParser(std::string_view text, const typename K::Ctx &ctx, std::string var, const std::map<std::string, K> &params)
        : s_(text), ctx_(ctx), var_(std::move(var)), params_(params) {}

    RatFunc<K> parse() {
        RatFunc<K> r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError("expression '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    RatFunc<K> constant(const K &c) const {
        return {UniPoly<K>::constant(c, var_), UniPoly<K>::constant(ctx_.one(), var_)};
    }

    RatFunc<K> expr() {
        RatFunc<K> r = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            RatFunc<K> t = term();
            r = c == '+' ? r + t : r - t;
        }
        return r;
    }
    RatFunc<K> term() {
        RatFunc<K> r = unary();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                RatFunc<K> t = unary();
                r = c == '*' ? r * t : r / t;
            } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                r = r * power();
            } else {
                return r;
            }
        }
    }
    RatFunc<K> unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return constant(ctx_.zero()) - unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }
    RatFunc<K> power() {
        RatFunc<K> base = atom();
        if (peek() != '^') return base;
        ++pos_;
        bool paren = peek() == '(';
        if (paren) ++pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_ || pos_ - start > 6) fail("exponent must be a small integer");
        long e = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren) {
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        }
        RatFunc<K> r = constant(ctx_.one());
        for (long i = 0; i < e; ++i) r = r * base;
        return neg ? constant(ctx_.one()) / r : r;
    }
    RatFunc<K> atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc<K> r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return constant(from_rational<K>(ctx_, Rational::parse(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == var_) return {UniPoly<K>::x(ctx_, var_), UniPoly<K>::constant(ctx_.one(), var_)};
            auto it = params_.find(name);
            if (it == params_.end()) fail("unknown symbol '" + name + "'");
            return constant(it->second);
        }
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    typename K::Ctx ctx_;
    std::string var_;
    const std::map<std::string, K> &params_;
};

} // namespace detail

template <FieldElement K>
RatFunc<K> parse_ratfunc(std::string_view text, const typename K::Ctx &ctx, const std::string &var = "z",
                         const std::map<std::string, K> &params = {}) {
    return detail::ExprParser<K>(text, ctx, var, params).parse();
}

// A map given in affine syntax; its degree is max(deg num, deg den) in
// lowest terms.
template <FieldElement K>
ProjMap<K> parse_map(std::string_view text, const typename K::Ctx &ctx, const std::map<std::string, K> &params = {}) {
    RatFunc<K> f = parse_ratfunc<K>(text, ctx, "z", params);
    int d = std::max(f.num.degree(), f.den.degree());
    if (d < 1) throw DomainError("map '" + std::string(text) + "' is constant");
    return ProjMap<K>(f.num, f.den, static_cast<std::size_t>(d));
}

// Comma-separated list of field elements.
template <FieldElement K>
std::vector<K> parse_list(std::string_view text, const typename K::Ctx &ctx) {
    std::vector<K> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(from_rational<K>(ctx, Rational::parse(item)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Comma-separated projective points: field elements or "inf".
template <FieldElement K>
std::vector<ProjPoint<K>> parse_points(std::string_view text, const typename K::Ctx &ctx) {
    std::vector<ProjPoint<K>> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = text.find(',', start);
        std::string item(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        std::erase_if(item, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (item == "inf" || item == "infinity")
            out.push_back(ProjPoint<K>::infinity(ctx));
        else
            out.push_back(ProjPoint<K>::affine(from_rational<K>(ctx, Rational::parse(item))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Field element as printed in documents: "a/b" over Q, the residue over F_p.
template <FieldElement K>
std::string element_text(const K &x) {
    if constexpr (is_modp_v<K>)
        return std::to_string(x.value());
    else
        return x.to_string();
}

} // namespace mspec
