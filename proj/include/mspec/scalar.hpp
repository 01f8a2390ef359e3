#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "mspec/modp.hpp"
#include "mspec/rational.hpp"

namespace mspec {

// Which exact field a computation runs over: Q, or F_p.
struct FieldSpec {
    std::uint64_t p = 0; // 0 means Q

    bool is_rational() const { return p == 0; }
    RationalField rational() const { return {}; }
    PrimeField prime() const { return PrimeField{p}; }

    // "QQ", "GF:p" or "GF p".
    static FieldSpec parse(std::string_view text);
    std::string to_string() const;
    bool operator==(const FieldSpec &) const = default;
};

// Tagged exact scalar used at the library's text boundary.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational q) : v_(std::move(q)) {} // NOLINT(google-explicit-constructor)
    Scalar(ModP x) : v_(x) {}                 // NOLINT(google-explicit-constructor)

    // "a/b", "a", or "a mod p".
    static Scalar parse(std::string_view text);
    // Parse a literal into the given field ("a/b" is reduced mod p for F_p).
    static Scalar parse_in(std::string_view text, const FieldSpec &field);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational &rational() const { return std::get<Rational>(v_); }
    const ModP &modp() const { return std::get<ModP>(v_); }
    FieldSpec field() const { return is_rational() ? FieldSpec{} : FieldSpec{modp().modulus()}; }

    template <class K>
    const K &as() const { return std::get<K>(v_); }

    std::string to_string() const;
    bool operator==(const Scalar &o) const { return v_ == o.v_; }

  private:
    std::variant<Rational, ModP> v_;
};

} // namespace mspec
