#include "doctest.h"

#include <random>

#include "mspec/resultant.hpp"
#include "mspec/scalar.hpp"
#include "mspec/unipoly.hpp"

using namespace mspec;

namespace {

const PrimeField F101{101};

UniPoly<ModP> rand_poly(const PrimeField &F, std::mt19937_64 &rng, int deg) {
    std::vector<ModP> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_element<ModP>(F, rng));
    c.push_back(F.one());
    return UniPoly<ModP>(F, c);
}

UniPoly<Rational> qpoly(std::initializer_list<Rational> c) { return UniPoly<Rational>(RationalField{}, c); }

} // namespace

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(6, -4);
    CHECK(a.to_string() == "-3/2");
    CHECK(a.den() == 2);
    CHECK((a * Rational(2, 3)).to_string() == "-1");
    CHECK_THROWS_AS(Rational(0).inv(), DomainError);
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("rational string round trip is exact") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        Rational q = random_element<Rational>(RationalField{}, rng, 1000000) *
                     Rational(mpq_class("123456789012345678901234567890/7"));
        CHECK(Rational::parse(q.to_string()) == q);
    }
}

TEST_CASE("prime field values are canonical") {
    CHECK(F101.from_int(-1).value() == 100);
    CHECK(F101.from_ratio(1, 2).value() == 51);
    CHECK(ModP::parse("205 mod 101") == F101.from_int(3));
    CHECK(ModP::parse("7 mod 101").to_string() == "7 mod 101");
    CHECK_THROWS_AS(F101.zero().inv(), DomainError);
    CHECK_THROWS_AS(F101.one() + PrimeField{103}.one(), DomainError);
    CHECK(F101.from_rational(Rational(3, 4)) * F101.from_int(4) == F101.from_int(3));
    CHECK_THROWS_AS(F101.from_rational(Rational(1, 101)), DomainError);
}

TEST_CASE("scalar and field descriptors parse") {
    CHECK(FieldSpec::parse("QQ").is_rational());
    CHECK(FieldSpec::parse("GF:101").p == 101);
    CHECK(FieldSpec::parse("GF 101").p == 101);
    CHECK_THROWS(FieldSpec::parse("GF:100"));
    CHECK(Scalar::parse("3/4").rational() == Rational(3, 4));
    CHECK(Scalar::parse("5 mod 7").modp() == PrimeField{7}.from_int(5));
    CHECK(Scalar::parse_in("1/2", FieldSpec{7}).modp() == PrimeField{7}.from_int(4));
}

TEST_CASE("gcd") {
    auto f = qpoly({-1, 0, 1});
    auto g = qpoly({-1, 1});
    CHECK(gcd(f, g) == g);
    CHECK(gcd(qpoly({2, 4}), UniPoly<Rational>(RationalField{})) == qpoly({Rational(1, 2), 1}));
    CHECK(gcd(UniPoly<Rational>(RationalField{}), UniPoly<Rational>(RationalField{})).is_zero());
    CHECK_THROWS_AS(gcd(UniPoly<ModP>::x(F101), UniPoly<ModP>::x(PrimeField{103})), DomainError);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        auto a = rand_poly(F101, rng, 3), b = rand_poly(F101, rng, 4), h = rand_poly(F101, rng, 2);
        auto g2 = gcd(a * h, b * h);
        CHECK((g2 % h).is_zero());
        CHECK(((a * h) % g2).is_zero());
        CHECK(((b * h) % g2).is_zero());
    }
}

TEST_CASE("derivative and composition") {
    // x^3 + a x + b with a = 5, b = 7
    auto f = qpoly({7, 5, 0, 1});
    CHECK(f.derivative() == qpoly({5, 0, 3}));
    auto x = UniPoly<Rational>::x(RationalField{});
    CHECK(f.compose(x) == f);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto a = rand_poly(F101, rng, 4), b = rand_poly(F101, rng, 3);
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
        ModP t = random_element<ModP>(F101, rng);
        CHECK(a.compose(b).eval(t) == a.eval(b.eval(t)));
    }
}

TEST_CASE("squarefree part") {
    auto f = qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({-2, 1});
    CHECK(squarefree_part(f) == qpoly({-1, 1}) * qpoly({-2, 1}));
    CHECK_THROWS_AS(squarefree_part(UniPoly<Rational>(RationalField{})), DomainError);

    // x^p - c = (x - c)^p over F_p
    const PrimeField F7{7};
    ModP c = F7.from_int(3);
    auto xp = UniPoly<ModP>::monomial(F7.one(), 7) - UniPoly<ModP>::constant(c);
    CHECK(squarefree_part(xp) == UniPoly<ModP>(F7, {-c, F7.one()}));

    std::mt19937_64 rng(4);
    for (int i = 0; i < 60; ++i) {
        const PrimeField F = i % 2 ? F7 : F101;
        std::vector<ModP> roots;
        std::vector<std::uint64_t> distinct;
        int n = 1 + static_cast<int>(rng() % 12);
        for (int k = 0; k < n; ++k) {
            ModP r = random_element<ModP>(F, rng);
            if (F.p == 101) r = F.from_int(static_cast<std::int64_t>(rng() % 6));
            int mult = 1 + static_cast<int>(rng() % (F.p == 7 ? 9 : 3));
            for (int m = 0; m < mult; ++m) roots.push_back(r);
            if (std::find(distinct.begin(), distinct.end(), r.value()) == distinct.end()) distinct.push_back(r.value());
        }
        auto g = UniPoly<ModP>::from_roots(F, roots);
        auto s = squarefree_part(g);
        CHECK(s.degree() == static_cast<int>(distinct.size()));
        CHECK((g % s).is_zero());
    }
}

TEST_CASE("roots in the prime field") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        std::vector<std::uint64_t> want;
        std::vector<ModP> roots;
        for (int k = 0; k < 6; ++k) {
            auto v = rng() % 101;
            roots.push_back(F101.from_int(static_cast<std::int64_t>(v)));
            if (std::find(want.begin(), want.end(), v) == want.end()) want.push_back(v);
        }
        // an irreducible quadratic factor contributes nothing
        auto f = UniPoly<ModP>::from_roots(F101, roots) * UniPoly<ModP>(F101, {F101.from_int(2), F101.zero(), F101.one()});
        std::sort(want.begin(), want.end());
        auto got = roots_in_prime_field(f, 9);
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(got[k].value() == want[k]);
    }
}

TEST_CASE("resultant") {
    CHECK(resultant(qpoly({-1, 0, 1}), qpoly({-2, 1})) == Rational(3));
    auto f = qpoly({1, 2, 3});
    CHECK(resultant(f, f).is_zero());
    CHECK_THROWS_AS(resultant(UniPoly<Rational>(RationalField{}), UniPoly<Rational>(RationalField{})), DomainError);

    std::mt19937_64 rng(6);
    for (int i = 0; i < 60; ++i) {
        // split oracle: Res(f, g) = lc(f)^deg g * prod g(r_i)
        int m = 1 + static_cast<int>(rng() % 6), n = 1 + static_cast<int>(rng() % 6);
        std::vector<ModP> rf;
        for (int k = 0; k < m; ++k) rf.push_back(random_element<ModP>(F101, rng));
        ModP lcf = F101.from_int(1 + static_cast<std::int64_t>(rng() % 100));
        auto fp = lcf * UniPoly<ModP>::from_roots(F101, rf);
        auto g = rand_poly(F101, rng, n);
        ModP want = lcf.pow(static_cast<std::uint64_t>(n));
        for (const auto &r : rf) want = want * g.eval(r);
        CHECK(resultant(fp, g) == want);
        CHECK(want.is_zero() == (gcd(fp, g).degree() >= 1));
    }
}

TEST_CASE("resultant over a polynomial coefficient ring") {
    // Res_z(z^2 - w, z - 1) = 1 - w, by interpolation and by direct Bareiss
    RationalField Q;
    using P = UniPoly<Rational>;
    P w = P::x(Q, "w");
    P one = P::constant(Rational(1), "w");
    UniPolyCtx<Rational> ctx{Q, "w"};
    UniPoly<P> f(ctx, {-w, ctx.zero(), one}, "z");
    UniPoly<P> g(ctx, {-one, one}, "z");
    P want = one - w;
    CHECK(resultant(f, g) == want);
    CHECK(resultant_in_aux(f, g, 1) == want);

    std::mt19937_64 rng(7);
    UniPolyCtx<ModP> pctx{F101, "w"};
    for (int i = 0; i < 20; ++i) {
        std::vector<UniPoly<ModP>> fc, gc;
        for (int k = 0; k < 4; ++k) fc.push_back(rand_poly(F101, rng, 2).with_var("w"));
        for (int k = 0; k < 3; ++k) gc.push_back(rand_poly(F101, rng, 1).with_var("w"));
        UniPoly<UniPoly<ModP>> a(pctx, fc, "z"), b(pctx, gc, "z");
        CHECK(resultant(a, b) == resultant_in_aux(a, b, 2 * 2 + 3 * 1));
    }
}
