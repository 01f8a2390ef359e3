#include "mspec/unipoly.hpp"

#include <algorithm>
#include <random>

namespace mspec {

namespace {

// Split a monic squarefree product of distinct linear factors over F_p.
void split_linear(const UniPoly<ModP> &f, std::mt19937_64 &rng, std::vector<ModP> &out) {
    const std::uint64_t p = f.base_ctx().p;
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(-f.monic().coeff(0));
        return;
    }
    if (p == 2) {
        // degree 2 here means x(x+1)
        for (std::uint64_t v = 0; v < 2; ++v)
            if (f.eval(ModP::raw(v, p)).is_zero()) out.push_back(ModP::raw(v, p));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    const PrimeField F{p};
    for (;;) {
        ModP a = ModP::raw(dist(rng), p);
        UniPoly<ModP> t(F, {a, F.one()}, f.var());
        UniPoly<ModP> h = powmod(t, (p - 1) / 2, f) - UniPoly<ModP>::constant(F.one(), f.var());
        UniPoly<ModP> g = gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_linear(g, rng, out);
            split_linear(f.exact_div(g).monic(), rng, out);
            return;
        }
    }
}

} // namespace

std::vector<ModP> roots_in_prime_field(const UniPoly<ModP> &f, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("roots of the zero polynomial");
    const PrimeField F = f.base_ctx();
    std::vector<ModP> out;
    if (f.degree() <= 0) return out;
    UniPoly<ModP> x = UniPoly<ModP>::x(F, f.var());
    UniPoly<ModP> fm = f.monic();
    UniPoly<ModP> g = gcd(powmod(x, F.p, fm) - x, fm);
    std::mt19937_64 rng(seed);
    split_linear(g, rng, out);
    std::sort(out.begin(), out.end(), [](const ModP &a, const ModP &b) { return a.value() < b.value(); });
    return out;
}

} // namespace mspec
