#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "mspec/errors.hpp"
#include "mspec/rational.hpp"

namespace mspec {

class ModP;

// The prime field F_p for a word-sized prime p < 2^63.
struct PrimeField {
    std::uint64_t p = 0;

    ModP zero() const;
    ModP one() const;
    ModP from_int(std::int64_t n) const;
    ModP from_ratio(std::int64_t num, std::int64_t den) const;
    // Reduction of a rational; throws DomainError when the denominator
    // vanishes mod p.
    ModP from_rational(const Rational &q) const;
    std::uint64_t characteristic() const { return p; }
    std::string name() const { return "GF:" + std::to_string(p); }
    bool operator==(const PrimeField &) const = default;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Residue class mod p stored in the canonical range [0, p). Every element
// carries its modulus; mixing moduli is a DomainError.
class ModP {
  public:
    using Ctx = PrimeField;

    ModP() = default;
    ModP(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

    static ModP raw(std::uint64_t value, std::uint64_t p) {
        ModP r;
        r.v_ = value;
        r.p_ = p;
        return r;
    }

    // Accepts "a mod p".
    static ModP parse(std::string_view text);

    Ctx ctx() const { return PrimeField{p_}; }
    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    ModP inv() const {
        if (v_ == 0) throw DomainError("division by zero in GF(" + std::to_string(p_) + ")");
        return raw(detail::powmod(v_, p_ - 2, p_), p_);
    }
    ModP pow(std::uint64_t e) const { return raw(detail::powmod(v_, e, p_), p_); }

    std::string to_string() const { return std::to_string(v_) + " mod " + std::to_string(p_); }

    ModP operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    ModP &operator+=(const ModP &o) {
        check(o);
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    ModP &operator-=(const ModP &o) {
        check(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    ModP &operator*=(const ModP &o) {
        check(o);
        v_ = detail::mulmod(v_, o.v_, p_);
        return *this;
    }
    ModP &operator/=(const ModP &o) { return *this *= o.inv(); }

    friend ModP operator+(ModP a, const ModP &b) { return a += b; }
    friend ModP operator-(ModP a, const ModP &b) { return a -= b; }
    friend ModP operator*(ModP a, const ModP &b) { return a *= b; }
    friend ModP operator/(ModP a, const ModP &b) { return a /= b; }
    friend bool operator==(const ModP &a, const ModP &b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    friend std::ostream &operator<<(std::ostream &os, const ModP &x) { return os << x.to_string(); }

  private:
    void check(const ModP &o) const {
        if (o.p_ != p_) throw DomainError("field mismatch: GF(" + std::to_string(p_) + ") vs GF(" + std::to_string(o.p_) + ")");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

inline ModP PrimeField::zero() const { return ModP::raw(0, p); }
inline ModP PrimeField::one() const { return ModP::raw(1 % p, p); }
inline ModP PrimeField::from_int(std::int64_t n) const {
    std::uint64_t r = n >= 0 ? static_cast<std::uint64_t>(n) % p
                             : (p - static_cast<std::uint64_t>(-(n + 1)) % p - 1) % p;
    return ModP::raw(r, p);
}
inline ModP PrimeField::from_ratio(std::int64_t num, std::int64_t den) const { return from_int(num) / from_int(den); }

} // namespace mspec
