#include "mspec/scalar.hpp"

#include <cctype>

#include "mspec/primes.hpp"

namespace mspec {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::uint64_t parse_u64(std::string_view s) {
    if (s.empty() || s.size() > 19) throw ParseError("bad modulus '" + std::string(s) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad modulus '" + std::string(s) + "'");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    std::string d(den.front() == '+' ? den.substr(1) : den);
    mpz_class zn(n, 10), zd(d, 10);
    if (zd == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) throw DomainError("division by zero in QQ");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw DomainError("division by zero in QQ");
    return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(mpq_class(n, d));
}

ModP PrimeField::from_rational(const Rational &q) const {
    auto reduce = [this](const mpz_class &z) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
        return ModP::raw(r.get_ui(), p);
    };
    ModP den = reduce(q.den());
    if (den.is_zero()) throw DomainError("denominator of " + q.to_string() + " vanishes mod " + std::to_string(p));
    return reduce(q.num()) / den;
}

ModP ModP::parse(std::string_view text) {
    text = trim(text);
    auto pos = text.find("mod");
    if (pos == std::string_view::npos) throw ParseError("expected 'a mod p', got '" + std::string(text) + "'");
    std::uint64_t p = parse_u64(trim(text.substr(pos + 3)));
    if (p < 2 || !is_prime(p) || p >= (std::uint64_t{1} << 63)) throw ParseError("modulus is not a word-sized prime: " + std::to_string(p));
    return PrimeField{p}.from_rational(Rational::parse(text.substr(0, pos)));
}

FieldSpec FieldSpec::parse(std::string_view text) {
    text = trim(text);
    if (text == "QQ" || text == "Q") return {};
    if (text.substr(0, 2) == "GF") {
        auto rest = trim(text.substr(2));
        if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) rest = trim(rest.substr(1));
        if (!rest.empty() && rest.back() == ')') rest = trim(rest.substr(0, rest.size() - 1));
        std::uint64_t p = parse_u64(rest);
        if (p < 3 || p >= (std::uint64_t{1} << 63) || !is_prime(p))
            throw ParseError("GF modulus must be an odd word-sized prime, got " + std::string(rest));
        return FieldSpec{p};
    }
    throw ParseError("unknown field '" + std::string(text) + "' (expected QQ or GF:p)");
}

std::string FieldSpec::to_string() const { return is_rational() ? "QQ" : "GF:" + std::to_string(p); }

Scalar Scalar::parse(std::string_view text) {
    if (text.find("mod") != std::string_view::npos) return Scalar(ModP::parse(text));
    return Scalar(Rational::parse(text));
}

Scalar Scalar::parse_in(std::string_view text, const FieldSpec &field) {
    if (text.find("mod") != std::string_view::npos) {
        ModP x = ModP::parse(text);
        if (field.is_rational() || x.modulus() != field.p)
            throw DomainError("field mismatch: '" + std::string(text) + "' is not in " + field.to_string());
        return Scalar(x);
    }
    Rational q = Rational::parse(text);
    if (field.is_rational()) return Scalar(std::move(q));
    return Scalar(field.prime().from_rational(q));
}

std::string Scalar::to_string() const { return is_rational() ? rational().to_string() : modp().to_string(); }

} // namespace mspec
