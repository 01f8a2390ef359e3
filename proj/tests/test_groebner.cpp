#include "doctest.h"

#include <random>
#include <set>

#include "mspec/groebner.hpp"
#include "mspec/quotient.hpp"

using namespace mspec;

namespace {

using MP = MultiPoly<ModP>;
const PrimeField F{10007};
const PrimeField F13{13};

struct XY {
    RingPtr ring;
    MP x, y;
    explicit XY(const PrimeField &f, MonomialOrder o = MonomialOrder::DegRevLex)
        : ring(PolyRing::make({"x", "y"}, o)), x(MP::variable(ring, f, 0)), y(MP::variable(ring, f, 1)) {}
    MP c(std::int64_t v, const PrimeField &f) const { return MP::constant(ring, f.from_int(v)); }
};

MP rand_poly(const RingPtr &ring, const PrimeField &f, std::mt19937_64 &rng, int deg, int terms) {
    std::vector<MP::Term> t;
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < ring->nvars(); ++v) {
            m.e[v] = static_cast<std::uint16_t>(rng() % (deg + 1));
            m.deg += m.e[v];
        }
        if (m.deg > static_cast<std::uint32_t>(deg)) continue;
        t.push_back({m, random_element<ModP>(f, rng)});
    }
    return MP::from_terms(ring, f, t);
}

} // namespace

TEST_CASE("monomial orders") {
    auto lex = PolyRing::make({"x", "y", "z"}, MonomialOrder::Lex);
    auto drl = PolyRing::make({"x", "y", "z"}, MonomialOrder::DegRevLex);
    Monomial xz = Monomial::var(0) * Monomial::var(2), y2 = Monomial::var(1, 2), x = Monomial::var(0);
    CHECK(lex->compare(xz, y2) > 0);
    CHECK(drl->compare(xz, y2) < 0); // x*z < y^2 in degrevlex
    CHECK(drl->compare(x, y2) < 0);
    CHECK(lex->compare(x, y2) > 0);
    auto blk = PolyRing::make({"t", "x", "y"}, MonomialOrder::Block, 1);
    CHECK(blk->compare(Monomial::var(0), Monomial::var(1, 5)) > 0);
}

TEST_CASE("polynomial arithmetic and parsing-free construction") {
    XY r(F);
    MP f = (r.x + r.y) * (r.x - r.y);
    CHECK(f == r.x.pow(2) - r.y.pow(2));
    CHECK(f.total_degree() == 2);
    CHECK(f.to_string() == "x^2 + 10006*y^2");
    CHECK(f.derivative(0) == r.c(2, F) * r.x);
    CHECK(f.eval({F.from_int(3), F.from_int(2)}) == F.from_int(5));
    CHECK(f.substitute({r.y, r.x}) == -f);
}

TEST_CASE("buchberger basics") {
    XY r(F);
    auto gb = buchberger(IdealBasis<ModP>::of({r.x}));
    REQUIRE(gb.gens.size() == 1);
    CHECK(gb.gens[0] == r.x);

    gb = buchberger(IdealBasis<ModP>::of({r.x + r.y, r.x - r.y}));
    REQUIRE(gb.gens.size() == 2);
    std::set<std::string> lms;
    for (auto &g : gb.gens) lms.insert(MP::term(r.ring, F.one(), g.lm()).to_string());
    CHECK(lms == std::set<std::string>{"x", "y"});

    CHECK(*quotient_dimension(buchberger(IdealBasis<ModP>::of({r.x, r.y}))) == 1);
    CHECK(*quotient_dimension(buchberger(IdealBasis<ModP>::of({r.x.pow(2), r.y}))) == 2);
    CHECK(!quotient_dimension(buchberger(IdealBasis<ModP>::of({r.x * r.y}))).has_value());

    MP one = r.c(1, F);
    auto proper = buchberger(IdealBasis<ModP>::of({r.x.pow(2) - r.y, r.y.pow(3) - r.c(2, F)}));
    CHECK(normal_form(one, proper) == one);
    CHECK(normal_form(r.x.pow(2) - r.y, proper).is_zero());
    auto unit = buchberger(IdealBasis<ModP>::of({r.x, r.x - one}));
    CHECK(unit.gens.size() == 1);
    CHECK(unit.gens[0] == one);
    CHECK(*quotient_dimension(unit) == 0);
}

TEST_CASE("random systems satisfy the Buchberger criterion") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 25; ++i) {
        auto ring = PolyRing::make({"x", "y", "z"}, i % 2 ? MonomialOrder::Lex : MonomialOrder::DegRevLex);
        std::vector<MP> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(rand_poly(ring, F, rng, 2, 6) + MP::variable(ring, F, k).pow(2));
        auto in = IdealBasis<ModP>::of(gens);
        auto gb = buchberger(in);
        CHECK(satisfies_buchberger_criterion(gb));
        for (auto &g : gens) CHECK(normal_form(g, gb).is_zero());
        // reducedness: leading coefficients 1, no term divisible by another lm
        for (std::size_t a = 0; a < gb.gens.size(); ++a) {
            CHECK(gb.gens[a].lc() == F.one());
            for (std::size_t b = 0; b < gb.gens.size(); ++b) {
                if (a == b) continue;
                for (auto &t : gb.gens[a].terms()) CHECK(!gb.gens[b].lm().divides(t.first));
            }
        }
        MP f = rand_poly(ring, F, rng, 4, 10);
        MP nf = normal_form(f, gb);
        CHECK(normal_form(nf, gb) == nf);
        CHECK(normal_form(f - nf, gb).is_zero());
    }
}

TEST_CASE("quotient dimension is independent of the order") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10; ++i) {
        auto drl = PolyRing::make({"x", "y"}, MonomialOrder::DegRevLex);
        auto lex = PolyRing::make({"x", "y"}, MonomialOrder::Lex);
        std::vector<MP> gens = {rand_poly(drl, F, rng, 3, 8) + MP::variable(drl, F, 0).pow(3),
                                rand_poly(drl, F, rng, 2, 5) + MP::variable(drl, F, 1).pow(2)};
        auto in = IdealBasis<ModP>::of(gens);
        auto a = quotient_dimension(buchberger(in, drl));
        auto b = quotient_dimension(buchberger(in, lex));
        REQUIRE(a.has_value());
        CHECK(a == b);
    }
}

TEST_CASE("budget exhaustion") {
    std::mt19937_64 rng(13);
    auto ring = PolyRing::make({"x", "y", "z"});
    std::vector<MP> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(rand_poly(ring, F, rng, 3, 8) + MP::variable(ring, F, k).pow(3));
    GroebnerOptions opts;
    opts.max_reductions = 2;
    CHECK_THROWS_AS(buchberger(IdealBasis<ModP>::of(gens), opts), BudgetExhausted);
}

TEST_CASE("elimination") {
    auto ring = PolyRing::make({"t", "x", "y"});
    MP t = MP::variable(ring, F, 0), x = MP::variable(ring, F, 1), y = MP::variable(ring, F, 2);
    auto e = eliminate(IdealBasis<ModP>::of({x - t, y - t * t}), {"x", "y"});
    REQUIRE(e.gens.size() == 1);
    auto xr = MP::variable(e.ring, F, "x"), yr = MP::variable(e.ring, F, "y");
    CHECK(normal_form(yr - xr * xr, e).is_zero());

    // keeping everything returns the basis itself
    auto all = eliminate(IdealBasis<ModP>::of({x - t, y - t * t}), {"t", "x", "y"});
    auto direct = buchberger(IdealBasis<ModP>::of({x - t, y - t * t}), all.ring);
    CHECK(all.gens == direct.gens);
}

TEST_CASE("distinct points") {
    std::mt19937_64 rng(14);
    auto ring = PolyRing::make({"x"});
    MP x = MP::variable(ring, F, 0);
    CHECK(distinct_point_count(IdealBasis<ModP>::of({x * x}), rng) == 1);

    // products of distinct linear forms: x in {a_i}, y in {b_j}
    for (int i = 0; i < 10; ++i) {
        XY r(F);
        std::size_t na = 1 + rng() % 4, nb = 1 + rng() % 4;
        MP fa = r.c(1, F), fb = r.c(1, F);
        std::set<std::uint64_t> sa, sb;
        for (std::size_t k = 0; k < na; ++k) {
            auto a = rng() % 50;
            sa.insert(a);
            fa *= r.x - r.c(static_cast<std::int64_t>(a), F);
        }
        for (std::size_t k = 0; k < nb; ++k) {
            auto b = rng() % 50;
            sb.insert(b);
            fb *= r.y - r.c(static_cast<std::int64_t>(b), F);
        }
        auto in = IdealBasis<ModP>::of({fa, fb});
        auto gb = buchberger(in);
        std::size_t pts = sa.size() * sb.size();
        CHECK(distinct_point_count(in, rng) == pts);
        CHECK(*quotient_dimension(gb) == na * nb);
    }
}

TEST_CASE("distinct points match brute force over a small field") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 15; ++i) {
        XY r(F13);
        // a split system: f(x) = prod (x - a_i), g = y^2 - h(x) with random h
        std::vector<std::int64_t> as;
        MP fx = r.c(1, F13);
        for (int k = 0; k < 3; ++k) {
            auto a = static_cast<std::int64_t>(rng() % 13);
            as.push_back(a);
            fx *= r.x - r.c(a, F13);
        }
        MP h = rand_poly(r.ring, F13, rng, 1, 3);
        std::vector<MP> hx;
        MP g = r.y * r.y - (h.substitute({r.x, r.c(0, F13)}));
        auto in = IdealBasis<ModP>::of({fx, g});
        auto gb = buchberger(in);
        // brute force over F_13
        std::size_t brute = 0;
        for (std::int64_t a = 0; a < 13; ++a)
            for (std::int64_t b = 0; b < 13; ++b)
                if (fx.eval({F13.from_int(a), F13.from_int(b)}).is_zero() && g.eval({F13.from_int(a), F13.from_int(b)}).is_zero())
                    ++brute;
        // every solution over the closure is F_13-rational only if h(a_i) is a square;
        // compare against the F_13 count when all fibers split
        bool split = true;
        for (auto a : as) {
            ModP v = h.substitute({r.x, r.c(0, F13)}).eval({F13.from_int(a), F13.zero()});
            if (!v.is_zero() && v.pow(6) != F13.one()) split = false;
        }
        std::size_t d = distinct_point_count(in, rng);
        CHECK(d <= *quotient_dimension(gb));
        if (split) CHECK(d == brute);
    }
}

TEST_CASE("jacobian determinant") {
    XY r(F);
    std::vector<ModP> o = {F.zero(), F.zero()};
    CHECK(jacobian_det_at(IdealBasis<ModP>::of({r.x, r.y}), o) == F.one());
    CHECK(jacobian_det_at(IdealBasis<ModP>::of({r.x * r.x, r.y}), o).is_zero());
    CHECK_THROWS_AS(jacobian_det_at(IdealBasis<ModP>::of({r.x - r.c(1, F), r.y}), o), DomainError);
    CHECK_THROWS_AS(jacobian_det_at(IdealBasis<ModP>::of({r.x}), o), DomainError);
}

TEST_CASE("rational coefficients") {
    auto ring = PolyRing::make({"x", "y"});
    using MQ = MultiPoly<Rational>;
    MQ x = MQ::variable(ring, RationalField{}, 0), y = MQ::variable(ring, RationalField{}, 1);
    MQ half = MQ::constant(ring, Rational(1, 2));
    auto in = IdealBasis<Rational>::of({x * x - half, y - x});
    auto gb = buchberger(in);
    CHECK(*quotient_dimension(gb) == 2);
    std::mt19937_64 rng(16);
    CHECK(distinct_point_count(in, rng) == 2);
}
