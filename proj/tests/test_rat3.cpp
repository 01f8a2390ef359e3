#include "doctest.h"

#include <random>

#include "mspec/primes.hpp"
#include "mspec/rat3.hpp"

using namespace mspec;
using namespace mspec::rat3;

namespace {

const RationalField Q;
const PrimeField F{2147483647};

template <class K, class Rng>
Deg3Invariants<K> random_invariants(const typename K::Ctx &ctx, Rng &rng) {
    for (;;) {
        Deg3Invariants<K> inv{random_element<K>(ctx, rng), random_element<K>(ctx, rng), random_element<K>(ctx, rng),
                              random_element<K>(ctx, rng), std::nullopt};
        try {
            K la = lambda_alpha(inv.l0, inv.l1, inv.linf);
            if (inv.alpha.is_zero() || inv.alpha == ctx.one() || la == ctx.one()) continue;
            (void)map_from_invariants(inv);
            return inv;
        } catch (const DomainError &) {
            continue;
        }
    }
}

// Mobius m with m(0) = a, m(1) = b, m(inf) = c for affine a, b, c.
Mobius<ModP> frame(const ModP &a, const ModP &b, const ModP &c) {
    Mobius<ModP> t(b - c, -a * (b - c), b - a, -c * (b - a)); // a, b, c -> 0, 1, inf
    return t.inverse();
}

} // namespace

TEST_CASE("lambda_alpha") {
    CHECK(lambda_alpha<Rational>(-1, -1, -1) == Rational(3));
    CHECK(lambda_alpha<Rational>(0, 0, 0) == Rational(3, 2));
    CHECK_THROWS_WITH_AS(lambda_alpha<Rational>(1, 0, 0), doctest::Contains("equals 1"), DomainError);
    // -1 - 1 + 3 = 1: the fourth multiplier is at infinity
    CHECK_THROWS_WITH_AS(lambda_alpha<Rational>(2, 2, Rational(2, 3)), doctest::Contains("pole"), DomainError);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        Rational l0 = random_element<Rational>(Q, rng), l1 = random_element<Rational>(Q, rng),
                 li = random_element<Rational>(Q, rng);
        try {
            Rational la = lambda_alpha(l0, l1, li);
            Rational one(1);
            CHECK((one / (one - l0) + one / (one - l1) + one / (one - li) + one / (one - la)) == one);
        } catch (const DomainError &) {
        }
    }
}

TEST_CASE("fixed-point index relation on random cubics") {
    std::mt19937_64 rng(2);
    PrimeField Fp{10007};
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 30; ++i) {
        auto phi = random_map<ModP>(Fp, 3, rng);
        auto fd = fixed_data(phi);
        if (!fd) continue;
        auto &[pts, ls] = *fd;
        bool unit = false;
        for (auto &l : ls) unit = unit || l == Fp.one();
        if (unit) continue;
        ModP s = Fp.zero();
        for (auto &l : ls) s = s + (Fp.one() - l).inv();
        CHECK(s == Fp.one());
        CHECK(lambda_alpha(ls[0], ls[1], ls[2]) == ls[3]);
        ++tested;
    }
    CHECK(tested == 30);
}

TEST_CASE("normal form from invariants") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto inv = random_invariants<Rational>(Q, rng);
        auto phi = map_from_invariants(inv);
        CHECK(phi.degree() == 3);
        CHECK(phi(ProjPoint<Rational>::affine(0)) == ProjPoint<Rational>::affine(0));
        CHECK(phi(ProjPoint<Rational>::affine(1)) == ProjPoint<Rational>::affine(1));
        CHECK(phi(ProjPoint<Rational>::infinity(Q)).is_infinity());
        CHECK(phi(ProjPoint<Rational>::affine(inv.alpha)) == ProjPoint<Rational>::affine(inv.alpha));
        CHECK(multiplier_at_point(phi, ProjPoint<Rational>::affine(0), 1) == inv.l0);
        CHECK(multiplier_at_point(phi, ProjPoint<Rational>::affine(1), 1) == inv.l1);
        CHECK(multiplier_at_point(phi, ProjPoint<Rational>::infinity(Q), 1) == inv.linf);
        CHECK(multiplier_at_point(phi, ProjPoint<Rational>::affine(inv.alpha), 1) ==
              lambda_alpha(inv.l0, inv.l1, inv.linf));
        // the displayed closed form is the same map
        CHECK(normal_form_display(inv) == phi);
    }
    CHECK_THROWS_AS(map_from_invariants<Rational>({2, 3, 4, 0, std::nullopt}), DomainError);
    CHECK_THROWS_AS(map_from_invariants<Rational>({2, 1, 4, 5, std::nullopt}), DomainError);
}

TEST_CASE("normal form conjugation round trip") {
    std::mt19937_64 rng(4);
    int tested = 0;
    for (int i = 0; i < 5000 && tested < 30; ++i) {
        auto phi = random_map<ModP>(F, 3, rng);
        auto fd = fixed_data(phi);
        if (!fd) continue;
        std::vector<ModP> aff;
        for (auto &p : fd->first)
            if (!p.is_infinity()) aff.push_back(p.x());
        auto m = frame(aff[0], aff[1], aff[2]);
        auto psi = conjugate(phi, m);
        auto pd = fixed_data(psi);
        REQUIRE(pd);
        std::optional<ModP> alpha;
        for (auto &p : pd->first)
            if (!p.is_infinity() && !p.x().is_zero() && !(p.x() == F.one())) alpha = p.x();
        REQUIRE(alpha);
        Deg3Invariants<ModP> inv{multiplier_at_point(psi, ProjPoint<ModP>::affine(F.zero()), 1),
                                 multiplier_at_point(psi, ProjPoint<ModP>::affine(F.one()), 1),
                                 multiplier_at_point(psi, ProjPoint<ModP>::infinity(F), 1), *alpha, std::nullopt};
        try {
            CHECK(map_from_invariants(inv) == psi);
        } catch (const DomainError &) {
            continue; // a unit multiplier
        }
        ++tested;
    }
    CHECK(tested == 30);
}

TEST_CASE("reconstruction from fixed data") {
    using PP = ProjPoint<Rational>;
    auto sq = reconstruct_from_fixed_data<Rational>({PP::affine(0), PP::affine(1), PP::infinity(Q)}, {0, 2, 0});
    CHECK(sq == ProjMap<Rational>::polynomial(UniPoly<Rational>(Q, {0, 0, 1}, "z")));

    CHECK_THROWS_AS(reconstruct_from_fixed_data<Rational>({PP::affine(0), PP::affine(0), PP::infinity(Q)}, {0, 2, 0}),
                    DomainError);
    CHECK_THROWS_AS(reconstruct_from_fixed_data<Rational>({PP::affine(0), PP::affine(1), PP::infinity(Q)}, {1, 2, 0}),
                    DomainError);
    // the index relation fails, so no quadratic map has this data
    CHECK_THROWS_AS(reconstruct_from_fixed_data<Rational>({PP::affine(0), PP::affine(1), PP::affine(2)}, {2, 3, 4}),
                    ValidationError);

    std::mt19937_64 rng(5);
    for (std::size_t d = 2; d <= 4; ++d) {
        int tested = 0;
        for (int i = 0; i < 20000 && tested < 50; ++i) {
            auto phi = random_map<ModP>(F, d, rng);
            auto fd = fixed_data(phi);
            if (!fd) continue;
            bool unit = false;
            for (auto &l : fd->second) unit = unit || l == F.one();
            if (unit) continue;
            CHECK(reconstruct_from_fixed_data(fd->first, fd->second) == phi);
            ++tested;
        }
        CHECK(tested == 50);
    }
}

TEST_CASE("reconstruction agrees with the normal form") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 30; ++i) {
        auto inv = random_invariants<Rational>(Q, rng);
        using PP = ProjPoint<Rational>;
        auto r = reconstruct_from_fixed_data<Rational>(
            {PP::affine(0), PP::affine(1), PP::infinity(Q), PP::affine(inv.alpha)},
            {inv.l0, inv.l1, inv.linf, lambda_alpha(inv.l0, inv.l1, inv.linf)});
        CHECK(r == map_from_invariants(inv));
    }
}

TEST_CASE("tau32 fiber system") {
    Rational l0(-2), l1(3), li(5, 2);
    for (Rational lb : {Rational(7), Rational(-3, 4), Rational(11, 5)}) {
        auto sys = build_tau32_system(l0, l1, li, lb);
        REQUIRE(sys.affine.gens.size() == 2);
        CHECK(sys.affine.gens[0].total_degree() == 9);
        CHECK(sys.affine.gens[1].total_degree() == 16);
        auto P = degenerate_points(l0, l1, li);
        for (std::size_t i = 0; i < 6; ++i)
            for (auto &g : sys.homogeneous.gens) CHECK(g.eval({P[i][0], P[i][1], P[i][2]}).is_zero());
        for (std::size_t i = 3; i < 6; ++i) CHECK(chart_jacobian(sys.homogeneous, P[i]).is_zero());
    }
    auto P = degenerate_points<Rational>(2, 3, 4);
    CHECK(P[0] == std::array<Rational, 3>{1, 0, 0});
    CHECK(P[1] == std::array<Rational, 3>{0, 0, 1});
    CHECK(P[2] == std::array<Rational, 3>{1, 1, 1});
    CHECK(P[3][1] == Rational(-3 - 4 + 2) / Rational(1 - 3));
    CHECK(P[4][1] == Rational(4 - 1) / Rational(1 - 2));
    CHECK(P[5][1] == -Rational(24 - 6 - 4 + 1) / Rational(6 - 2 - 3 + 1));
    CHECK_THROWS_AS(degenerate_points<Rational>(1, 3, 4), DomainError);
    CHECK_THROWS_AS(build_tau32_system<Rational>(2, 3, 4, -1), DomainError);
}

TEST_CASE("tau32 system contains actual 2-cycles") {
    std::mt19937_64 rng(7);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 10; ++i) {
        auto inv = random_invariants<ModP>(F, rng);
        auto phi = map_from_invariants(inv);
        auto per2 = period_polynomial(phi, 2);
        auto per1 = period_polynomial(phi, 1);
        auto exact = per2.exact_div(gcd(per2, per1));
        for (const ModP &b : roots_in_prime_field(exact)) {
            ModP lb = multiplier_at_point(phi, ProjPoint<ModP>::affine(b), 2);
            if (lb == F.one() || lb == -F.one()) continue;
            auto sys = build_tau32_system(inv.l0, inv.l1, inv.linf, lb);
            for (auto &g : sys.affine.gens) CHECK(g.eval({inv.alpha, b}).is_zero());
            ++tested;
            break;
        }
    }
    CHECK(tested == 10);
    // two generators without a common factor: the ideal is zero-dimensional
    for (int i = 0; i < 3; ++i) {
        auto inv = random_invariants<ModP>(F, rng);
        auto sys = build_tau32_system(inv.l0, inv.l1, inv.linf, random_element<ModP>(F, rng));
        CHECK(is_zero_dimensional(buchberger(sys.affine)));
    }
}

TEST_CASE("deg(tau_{3,2}) report") {
    auto rep = deg_tau32_report(std::nullopt, 7, 3);
    CHECK(rep.agree);
    REQUIRE(rep.draws.size() == 3);
    for (auto &d : rep.draws) {
        CHECK(d.bezout == 144);
        CHECK(d.distinct == 18);
        CHECK(d.degenerate == 6);
        CHECK(d.degenerate_jacobian_zero);
        CHECK(d.simple == 12);
        CHECK(d.degree == 12);
        CHECK(d.aggregate_p123 == 126);
        CHECK(d.distinct <= d.bezout);
        CHECK(d.simple + d.degenerate <= d.distinct);
        CHECK(d.prime >= (1ull << 30));
        CHECK(d.prime < (1ull << 31));
    }
    CHECK(rep.draws[0].prime != rep.draws[1].prime);
    // fixed specialization, reduced mod each prime
    auto fixed = deg_tau32_report(std::array<Rational, 4>{-2, 3, Rational(5, 2), 7}, 11, 2);
    CHECK(fixed.agree);
    CHECK(fixed.first().degree == 12);
    // same seed, same report
    auto again = deg_tau32_report(std::nullopt, 7, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(again.draws[k].prime == rep.draws[k].prime);
        CHECK(again.draws[k].lbeta == rep.draws[k].lbeta);
    }
}
