#include "qp/polyfactor.hpp"

#include <algorithm>
#include <functional>

namespace qp {

namespace {

unsigned long next_prime_ul(unsigned long p)
{
    Int q;
    mpz_nextprime(q.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t());
    return q.get_ui();
}

IntPoly poly_mod_m(const IntPoly& f, const Int& m)
{
    std::vector<Int> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) c[i] = mod_floor(f.c[i], m);
    return IntPoly(std::move(c));
}

IntPoly symmetric_lift(const IntPoly& f, const Int& m)
{
    std::vector<Int> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        Int x = mod_floor(f.c[i], m);
        if (2 * x > m) x -= m;
        c[i] = x;
    }
    return IntPoly(std::move(c));
}

IntPoly from_polyp(const PolyP& f)
{
    std::vector<Int> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) c[i] = Int(f.c[i]);
    return IntPoly(std::move(c));
}

// s*a + t*b = 1 over F_p for coprime a, b
void bezout_mod_p(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t)
{
    unsigned long p = a.p ? a.p : b.p;
    PolyP r0 = a, r1 = b;
    PolyP s0{p, {1}}, s1{p, {}};
    PolyP t0{p, {}}, t1{p, {1}};
    while (!r1.is_zero()) {
        PolyP q, r;
        pdivmod(r0, r1, q, r);
        r0 = r1;
        r1 = r;
        PolyP ns = psub(s0, pmul(q, s1));
        s0 = s1;
        s1 = ns;
        PolyP nt = psub(t0, pmul(q, t1));
        t0 = t1;
        t1 = nt;
    }
    if (r0.degree() != 0) throw internal_error("bezout_mod_p: inputs not coprime");
    unsigned long inv = p_inv(r0.c[0], p);
    for (auto& x : s0.c) x = (unsigned long)((unsigned __int128)x * inv % p);
    for (auto& x : t0.c) x = (unsigned long)((unsigned __int128)x * inv % p);
    s = s0;
    t = t0;
}

// Quadratic two-factor Hensel step chain: lifts f ≡ g*h (mod p) with g, h
// monic coprime to f ≡ g*h (mod target).
void hensel2(const IntPoly& f, IntPoly& g, IntPoly& h, IntPoly& s, IntPoly& t, const Int& p,
             const Int& target)
{
    Int cur = p;
    while (cur < target) {
        Int next = cur * cur;
        if (next > target) next = target;
        IntPoly q, r;
        IntPoly e = poly_mod_m(f - g * h, next);
        poly_divmod_monic(poly_mod_m(s * e, next), h, q, r);
        IntPoly hnew = poly_mod_m(h + r, next);
        poly_divmod_monic(poly_mod_m(t * e, next), g, q, r);
        IntPoly gnew = poly_mod_m(g + r, next);
        IntPoly d = poly_mod_m(s * gnew + t * hnew - IntPoly({Int(1)}), next);
        poly_divmod_monic(poly_mod_m(s * d, next), hnew, q, r);
        IntPoly snew = poly_mod_m(s - r, next);
        poly_divmod_monic(poly_mod_m(t * d, next), gnew, q, r);
        IntPoly tnew = poly_mod_m(t - r, next);
        g = gnew;
        h = hnew;
        s = snew;
        t = tnew;
        cur = next;
    }
}

// Lift the monic factors of f (monic, squarefree mod p) to mod target along a
// balanced product tree.
std::vector<IntPoly> hensel_lift_factors(const IntPoly& f, const std::vector<PolyP>& fac,
                                         unsigned long p, const Int& target)
{
    std::vector<IntPoly> out(fac.size());
    std::function<void(const IntPoly&, int, int)> go = [&](const IntPoly& fcur, int lo, int hi) {
        if (hi - lo == 1) {
            out[lo] = poly_mod_m(fcur, target);
            return;
        }
        int mid = (lo + hi) / 2;
        PolyP gl{p, {1}}, gr{p, {1}};
        for (int i = lo; i < mid; ++i) gl = pmul(gl, fac[i]);
        for (int i = mid; i < hi; ++i) gr = pmul(gr, fac[i]);
        PolyP sp, tp;
        bezout_mod_p(gl, gr, sp, tp);
        IntPoly g = from_polyp(gl), h = from_polyp(gr);
        IntPoly s = from_polyp(sp), t = from_polyp(tp);
        hensel2(poly_mod_m(fcur, target), g, h, s, t, Int(p), target);
        go(g, lo, mid);
        go(h, mid, hi);
    };
    go(poly_mod_m(f, target), 0, (int)fac.size());
    return out;
}

// Core engine: f monic squarefree of degree >= 2, returns monic irreducible
// factors.
std::vector<IntPoly> zassenhaus_monic(const IntPoly& f)
{
    int n = f.degree();
    unsigned long p = 101;
    unsigned long best_p = 0;
    std::vector<PolyP> best_fac;
    std::vector<bool> possible(n + 1, true);
    for (int tries = 0; tries < 24; ++tries) {
        p = next_prime_ul(p);
        PolyP fp = poly_mod(f, p);
        if (fp.degree() != n || !pis_squarefree(fp)) continue;
        auto fac = pfactor(fp, 7);
        std::vector<bool> reach(n + 1, false);
        reach[0] = true;
        for (auto& [g, e] : fac)
            for (int d = n; d >= g.degree(); --d)
                if (reach[d - g.degree()]) reach[d] = true;
        for (int d = 0; d <= n; ++d) possible[d] = possible[d] && reach[d];
        if (best_p == 0 || fac.size() < best_fac.size()) {
            best_p = p;
            best_fac.clear();
            for (auto& [g, e] : fac) best_fac.push_back(g);
        }
        bool irred = true;
        for (int d = 1; d < n; ++d)
            if (possible[d]) {
                irred = false;
                break;
            }
        if (irred) return {f};
        if (best_fac.size() <= 3) break;
    }
    if (best_p == 0) throw internal_error("factor: no squarefree prime found");
    if (best_fac.size() == 1) return {f};

    // Landau–Mignotte: factor coefficients bounded by 2^n * l2norm(f)
    Int norm2 = 0;
    for (auto& c : f.c) norm2 += c * c;
    Int bound = isqrt(norm2) + 1;
    for (int i = 0; i < n; ++i) bound *= 2;
    Int target = best_p;
    while (target <= 2 * bound) target *= Int(best_p);

    std::vector<IntPoly> lifted = hensel_lift_factors(f, best_fac, best_p, target);

    std::vector<IntPoly> result;
    std::vector<int> alive((int)lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = (int)i;
    IntPoly rem = f;

    while (!alive.empty()) {
        long m = (long)alive.size();
        bool found = false;
        for (long csize = 1; 2 * csize <= m && !found; ++csize) {
            std::vector<long> comb(csize);
            for (long i = 0; i < csize; ++i) comb[i] = i;
            while (true) {
                // skip complement duplicates at the midpoint
                if (!(2 * csize == m && comb[0] != 0)) {
                    int dsum = 0;
                    for (long i = 0; i < csize; ++i) dsum += lifted[alive[comb[i]]].degree();
                    if (dsum >= 1 && dsum <= n && possible[dsum] && dsum < rem.degree()) {
                        // trailing-coefficient precheck
                        Int tc = 1;
                        for (long i = 0; i < csize; ++i)
                            tc = mod_floor(tc * lifted[alive[comb[i]]].coeff(0), target);
                        if (2 * tc > target) tc -= target;
                        if (rem.coeff(0) == 0 || tc == 0 || divides(tc, rem.coeff(0))) {
                            IntPoly prod({Int(1)});
                            for (long i = 0; i < csize; ++i)
                                prod = poly_mod_m(prod * lifted[alive[comb[i]]], target);
                            IntPoly cand = symmetric_lift(prod, target);
                            if (poly_divides(cand, rem)) {
                                result.push_back(cand);
                                rem = poly_divexact(rem, cand);
                                std::vector<long> dead(comb);
                                std::vector<int> next;
                                for (long i = 0, di = 0; i < m; ++i) {
                                    if (di < (long)dead.size() && dead[di] == i) {
                                        ++di;
                                        continue;
                                    }
                                    next.push_back(alive[i]);
                                }
                                alive = next;
                                found = true;
                                break;
                            }
                        }
                    }
                }
                long i = csize - 1;
                while (i >= 0 && comb[i] == m - csize + i) --i;
                if (i < 0) break;
                ++comb[i];
                for (long j = i + 1; j < csize; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
        if (!found) {
            result.push_back(rem);
            break;
        }
        if (rem.degree() == 0) break;
    }
    return result;
}

} // namespace

std::vector<std::pair<IntPoly, int>> factor_int_poly(const IntPoly& f0)
{
    if (f0.is_zero()) throw domain_error("factor_int_poly(0)");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = poly_primitive_part(f0);
    if (f.degree() <= 0) return out;

    // Yun squarefree decomposition
    std::vector<std::pair<IntPoly, int>> sqf;
    {
        IntPoly a = f, d = poly_derivative(f);
        IntPoly g = poly_gcd(a, d);
        if (g.degree() == 0) {
            sqf.push_back({a, 1});
        } else {
            IntPoly b = poly_divexact(a, g);
            IntPoly c = poly_divexact(d, g);
            int i = 1;
            while (true) {
                IntPoly t = c - poly_derivative(b);
                if (t.is_zero()) {
                    if (b.degree() > 0) sqf.push_back({b, i});
                    break;
                }
                IntPoly h = poly_gcd(b, t);
                if (h.degree() > 0) sqf.push_back({h, i});
                b = poly_divexact(b, h);
                c = poly_divexact(t, h);
                ++i;
            }
        }
    }

    for (auto& [sf0, mult] : sqf) {
        IntPoly sf = poly_primitive_part(sf0);
        if (sf.degree() == 1) {
            out.push_back({sf, mult});
            continue;
        }
        Int lc = sf.lead();
        std::vector<IntPoly> irr;
        if (lc == 1) {
            irr = zassenhaus_monic(sf);
        } else {
            // monicize: fm(x) = lc^(n-1) * sf(x/lc), then map factors back
            long n = sf.degree();
            std::vector<Int> c(n + 1);
            Int pw = 1;
            for (long i = n; i >= 0; --i) {
                c[i] = sf.c[i] * pw;
                if (i > 0) pw *= lc;
            }
            // here c[i] = a_i * lc^(n-i); dividing by lc once gives the monic
            // variant with c[i] = a_i * lc^(n-1-i)
            for (long i = 0; i <= n; ++i) c[i] = divexact(c[i], lc);
            IntPoly fm(std::move(c));
            for (auto& h : zassenhaus_monic(fm)) {
                // factor of sf: primitive part of h(lc*x)
                std::vector<Int> hc(h.c.size());
                Int pw2 = 1;
                for (size_t i = 0; i < h.c.size(); ++i) {
                    hc[i] = h.c[i] * pw2;
                    pw2 *= lc;
                }
                irr.push_back(poly_primitive_part(IntPoly(std::move(hc))));
            }
        }
        for (auto& g : irr) out.push_back({g, mult});
    }

    std::sort(out.begin(), out.end(),
              [](auto& a, auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool is_irreducible(const IntPoly& f)
{
    if (f.degree() < 1) return false;
    auto fac = factor_int_poly(f);
    return fac.size() == 1 && fac[0].second == 1 && fac[0].first.degree() == f.degree();
}

} // namespace qp
