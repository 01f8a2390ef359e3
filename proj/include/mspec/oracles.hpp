#pragma once

// Slow, independent reference computations used by tests and the
// acceptance suite.

#include <vector>

#include "mspec/dynamics.hpp"
#include "mspec/linalg.hpp"
#include "mspec/unipoly.hpp"

namespace mspec::oracle {

// All z in P^1(F_p) with phi^n(z) = z, by evaluating the orbit pointwise.
inline std::vector<ProjPoint<ModP>> periodic_points_by_scan(const ProjMap<ModP> &phi, unsigned n) {
    const auto F = phi.ctx();
    std::vector<ProjPoint<ModP>> out;
    std::vector<ProjPoint<ModP>> all;
    for (std::uint64_t v = 0; v < F.p; ++v) all.push_back(ProjPoint<ModP>::affine(ModP::raw(v, F.p)));
    all.push_back(ProjPoint<ModP>::infinity(F));
    for (const auto &z : all) {
        ProjPoint<ModP> q = z;
        for (unsigned k = 0; k < n; ++k) q = phi(q);
        if (q == z) out.push_back(z);
    }
    return out;
}

// Characteristic polynomial of multiplication by h in F_p[x]/(f).
inline UniPoly<ModP> mult_char_poly(const UniPoly<ModP> &h, const UniPoly<ModP> &f) {
    const auto F = f.base_ctx();
    const std::size_t n = static_cast<std::size_t>(f.degree());
    Matrix<ModP> m(n, std::vector<ModP>(n, F.zero()));
    UniPoly<ModP> col = h % f;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m[i][j] = col.coeff(i);
        col = col.shift(1) % f;
    }
    return char_poly(m, F, "w");
}

// prod (w - lambda_P) over Per_n(phi) with multiplicity, assembled by
// splitting the affine period polynomial into distinct-degree chunks: the
// F_p-rational chunk is handled root by root, the others through their
// residue algebras, and infinity through the chart w -> 1/w.
inline UniPoly<ModP> multiplier_char_poly_split(const ProjMap<ModP> &phi, unsigned n) {
    const auto F = phi.ctx();
    const std::uint64_t p = F.p;
    ProjMap<ModP> it = iterate(phi, n);
    const std::size_t D = it.degree();
    const UniPoly<ModP> x = UniPoly<ModP>::x(F, "z");
    const UniPoly<ModP> &fn = it.num(), &gn = it.den();
    UniPoly<ModP> w_num = fn.derivative() * gn - fn * gn.derivative();
    UniPoly<ModP> per = fn - x * gn;
    UniPoly<ModP> result = UniPoly<ModP>::constant(F.one(), "w");
    const UniPoly<ModP> w = UniPoly<ModP>::x(F, "w");

    UniPoly<ModP> rem = per.monic();
    const std::size_t affine_count = static_cast<std::size_t>(rem.degree());
    UniPoly<ModP> frob = x; // x^(p^k) mod rem, recomputed per k
    for (std::size_t k = 1; rem.degree() > 0; ++k) {
        for (;;) {
            frob = x;
            for (std::size_t j = 0; j < k; ++j) frob = powmod(frob, p, rem);
            UniPoly<ModP> chunk = gcd(frob - x, rem);
            if (chunk.degree() <= 0) break;
            if (k == 1 && chunk == squarefree_part(chunk)) {
                for (std::uint64_t v = 0; v < p; ++v) {
                    ModP z = ModP::raw(v, p);
                    if (!chunk.eval(z).is_zero()) continue;
                    ModP g = gn.eval(z);
                    ModP lam = w_num.eval(z) / (g * g);
                    result = result * (w - UniPoly<ModP>::constant(lam, "w"));
                }
            } else {
                // h = W / G^2 in the residue algebra of the chunk
                UniPoly<ModP> g2 = (gn * gn) % chunk;
                // invert g2 modulo chunk by solving through the extended gcd
                UniPoly<ModP> a = g2, b = chunk, s0 = UniPoly<ModP>::constant(F.one(), "z"), s1(F, "z");
                while (!b.is_zero()) {
                    auto [q, r] = a.divmod(b);
                    UniPoly<ModP> s2 = s0 - q * s1;
                    a = b;
                    b = r;
                    s0 = s1;
                    s1 = s2;
                }
                UniPoly<ModP> inv = (a.lc().inv() * s0) % chunk;
                UniPoly<ModP> h = (w_num * inv) % chunk;
                result = result * mult_char_poly(h, chunk).with_var("w");
            }
            rem = rem.exact_div(chunk).monic();
            if (rem.degree() <= 0) break;
        }
        if (k > 64) break;
    }

    const std::size_t infinity_mult = D + 1 - affine_count;
    if (infinity_mult) {
        // psi(w) = 1 / phi^n(1 / w) = grev(w) / frev(w), multiplier psi'(0)
        auto rev = [&](const UniPoly<ModP> &f) {
            std::vector<ModP> c;
            for (std::size_t k = 0; k <= D; ++k) c.push_back(f.coeff(D - k));
            return UniPoly<ModP>(F, c, "z");
        };
        UniPoly<ModP> fr = rev(fn), gr = rev(gn);
        ModP f0 = fr.eval(F.zero());
        ModP lam = (gr.derivative().eval(F.zero()) * f0 - gr.eval(F.zero()) * fr.derivative().eval(F.zero())) / (f0 * f0);
        for (std::size_t k = 0; k < infinity_mult; ++k) result = result * (w - UniPoly<ModP>::constant(lam, "w"));
    }
    return result;
}

} // namespace mspec::oracle
