#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "mspec/errors.hpp"

namespace mspec {

class Rational;

// Context object for the field of rationals. Carries no state; it exists so
// generic code can build constants uniformly across coefficient fields.
struct RationalField {
    Rational zero() const;
    Rational one() const;
    Rational from_int(std::int64_t n) const;
    Rational from_ratio(std::int64_t num, std::int64_t den) const;
    std::uint64_t characteristic() const { return 0; }
    std::string name() const { return "QQ"; }
    bool operator==(const RationalField &) const = default;
};

// Arbitrary-precision rational number, always in lowest terms with a positive
// denominator.
class Rational {
  public:
    using Ctx = RationalField;

    Rational() = default;
    Rational(std::int64_t n) : q_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    explicit Rational(const mpz_class &z) : q_(z) {}

    // Accepts "a", "-a", "a/b".
    static Rational parse(std::string_view text);

    Ctx ctx() const { return {}; }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    const mpq_class &value() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    Rational inv() const;
    Rational pow(std::int64_t e) const;

    std::string to_string() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.to_string(); }

  private:
    mpq_class q_{0};
};

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::from_int(std::int64_t n) const { return Rational(n); }
inline Rational RationalField::from_ratio(std::int64_t num, std::int64_t den) const { return Rational(num, den); }

} // namespace mspec
