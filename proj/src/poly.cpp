#include "qp/poly.hpp"
#include "qp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qp {

IntPoly IntPoly::from_longs(const std::vector<long>& v)
{
    std::vector<Int> c;
    c.reserve(v.size());
    for (long x : v) c.push_back(Int(x));
    return IntPoly(std::move(c));
}

std::string IntPoly::str(const std::string& var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (!first) os << (a < 0 ? " - " : " + ");
        else if (a < 0) os << "-";
        first = false;
        Int aa = abs(a);
        if (aa != 1 || i == 0) os << aa.get_str();
        if (i > 0) {
            if (aa != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b)
{
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b)
{
    std::vector<Int> c(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return IntPoly(std::move(c));
}

IntPoly operator*(const Int& k, const IntPoly& a)
{
    std::vector<Int> c(a.c);
    for (auto& x : c) x *= k;
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a) { return Int(-1) * a; }

Int poly_eval(const IntPoly& f, const Int& x)
{
    Int v = 0;
    for (int i = f.degree(); i >= 0; --i) v = v * x + f.c[i];
    return v;
}

Rat poly_eval(const IntPoly& f, const Rat& x)
{
    Rat v = 0;
    for (int i = f.degree(); i >= 0; --i) v = v * x + Rat(f.c[i]);
    return v;
}

IntPoly poly_derivative(const IntPoly& f)
{
    if (f.degree() < 1) return IntPoly();
    std::vector<Int> c(f.degree());
    for (int i = 1; i <= f.degree(); ++i) c[i - 1] = Int(i) * f.c[i];
    return IntPoly(std::move(c));
}

Int poly_content(const IntPoly& f)
{
    Int g = 0;
    for (auto& x : f.c) g = gcd(g, x);
    return g;
}

IntPoly poly_primitive_part(const IntPoly& f)
{
    if (f.is_zero()) return f;
    Int g = poly_content(f);
    if (f.lead() < 0) g = -g;
    std::vector<Int> c(f.c);
    for (auto& x : c) x = divexact(x, g);
    return IntPoly(std::move(c));
}

void poly_divmod_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r)
{
    if (!b.is_monic()) throw internal_error("poly_divmod_monic: divisor not monic");
    r = a;
    std::vector<Int> qc(std::max(0, a.degree() - b.degree() + 1), Int(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Int f = r.lead();
        qc[k] += f;
        for (int i = 0; i <= b.degree(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    q = IntPoly(std::move(qc));
}

IntPoly poly_divexact(const IntPoly& a, const IntPoly& b)
{
    if (b.is_zero()) throw internal_error("poly_divexact by zero");
    IntPoly r = a;
    std::vector<Int> qc(std::max(0, a.degree() - b.degree() + 1), Int(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        if (!divides(b.lead(), r.lead())) throw internal_error("poly_divexact: not divisible");
        Int f = divexact(r.lead(), b.lead());
        qc[k] += f;
        for (int i = 0; i <= b.degree(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    if (!r.is_zero()) throw internal_error("poly_divexact: nonzero remainder");
    return IntPoly(std::move(qc));
}

bool poly_divides(const IntPoly& b, const IntPoly& a)
{
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < b.degree()) return false;
    // pseudo-division then check remainder
    IntPoly r = a;
    int steps = a.degree() - b.degree() + 1;
    for (int s = 0; s < steps && !r.is_zero() && r.degree() >= b.degree(); ++s) {
        int k = r.degree() - b.degree();
        Int f = r.lead();
        for (auto& x : r.c) x *= b.lead();
        for (int i = 0; i <= b.degree(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    return r.is_zero();
}

// ---- mod-p arithmetic ----

unsigned long p_inv(unsigned long a, unsigned long p)
{
    long t = 0, nt = 1;
    long r = (long)p, nr = (long)(a % p);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw internal_error("p_inv: not invertible");
    return (unsigned long)(t < 0 ? t + (long)p : t);
}

PolyP poly_mod(const IntPoly& f, unsigned long p)
{
    PolyP out;
    out.p = p;
    out.c.resize(f.c.size());
    Int pp(static_cast<unsigned long>(p));
    for (size_t i = 0; i < f.c.size(); ++i) out.c[i] = mod_floor(f.c[i], pp).get_ui();
    out.trim();
    return out;
}

static unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p)
{
    return (unsigned long)((unsigned __int128)a * b % p);
}

PolyP pmul(const PolyP& a, const PolyP& b)
{
    PolyP out;
    out.p = a.p;
    if (a.is_zero() || b.is_zero()) return out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = (out.c[i + j] + (unsigned __int128)a.c[i] * b.c[j]) % a.p;
    }
    out.trim();
    return out;
}

PolyP psub(const PolyP& a, const PolyP& b)
{
    PolyP out;
    out.p = a.p ? a.p : b.p;
    out.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = (out.c[i] + out.p - b.c[i]) % out.p;
    out.trim();
    return out;
}

void pdivmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r)
{
    unsigned long p = a.p ? a.p : b.p;
    if (b.is_zero()) throw internal_error("pdivmod by zero");
    r = a;
    q.p = p;
    r.p = p;
    q.c.assign(std::max(0, a.degree() - b.degree() + 1), 0);
    unsigned long linv = p_inv(b.c.back(), p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        unsigned long f = mulmod(r.c.back(), linv, p);
        q.c[k] = (q.c[k] + f) % p;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[i + k] = (r.c[i + k] + p - mulmod(f, b.c[i], p)) % p;
        r.trim();
    }
    q.trim();
}

PolyP pmonic(const PolyP& a)
{
    if (a.is_zero()) return a;
    PolyP out = a;
    unsigned long inv = p_inv(a.c.back(), a.p);
    for (auto& x : out.c) x = mulmod(x, inv, a.p);
    return out;
}

PolyP pgcd(PolyP a, PolyP b)
{
    if (a.p == 0) a.p = b.p;
    if (b.p == 0) b.p = a.p;
    while (!b.is_zero()) {
        PolyP q, r;
        pdivmod(a, b, q, r);
        a = b;
        b = r;
    }
    return pmonic(a);
}

PolyP ppowmod(const PolyP& a, Int e, const PolyP& m)
{
    PolyP base, one;
    one.p = m.p;
    one.c = {1};
    PolyP q;
    pdivmod(a, m, q, base);
    PolyP result = one;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            PolyP t = pmul(result, base);
            pdivmod(t, m, q, result);
        }
        e >>= 1;
        if (e > 0) {
            PolyP t = pmul(base, base);
            pdivmod(t, m, q, base);
        }
    }
    return result;
}

static PolyP pderiv(const PolyP& f)
{
    PolyP out;
    out.p = f.p;
    if (f.degree() < 1) return out;
    out.c.resize(f.degree());
    for (int i = 1; i <= f.degree(); ++i)
        out.c[i - 1] = (unsigned long)(((unsigned __int128)f.c[i] * (i % f.p)) % f.p);
    out.trim();
    return out;
}

bool pis_squarefree(const PolyP& f)
{
    PolyP d = pderiv(f);
    if (d.is_zero()) return f.degree() <= 0;
    return pgcd(f, d).degree() == 0;
}

namespace {

bool pless(const PolyP& a, const PolyP& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// equal-degree splitting, deterministic PRNG
void equal_degree_split(const PolyP& f, int d, std::vector<PolyP>& out, unsigned long& state)
{
    if (f.degree() == d) {
        out.push_back(pmonic(f));
        return;
    }
    unsigned long p = f.p;
    while (true) {
        // xorshift64 for reproducible "random" polynomials
        PolyP a;
        a.p = p;
        a.c.resize(f.degree());
        for (auto& x : a.c) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            x = state % p;
        }
        a.trim();
        if (a.degree() < 1) continue;
        PolyP g = pgcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            PolyP q, r;
            pdivmod(f, g, q, r);
            equal_degree_split(g, d, out, state);
            equal_degree_split(pmonic(q), d, out, state);
            return;
        }
        Int pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), p, (unsigned long)d);
        Int e = (pd - 1) / 2;
        PolyP b;
        if (p == 2) {
            // trace map for characteristic 2
            PolyP t = a, acc = a, q2, r2;
            for (int i = 1; i < d; ++i) {
                t = pmul(t, t);
                pdivmod(t, f, q2, t);
                acc = psub(acc, PolyP{p, {0}});
                acc.c.resize(std::max(acc.c.size(), t.c.size()), 0);
                for (size_t k = 0; k < t.c.size(); ++k) acc.c[k] = (acc.c[k] + t.c[k]) % p;
                acc.trim();
            }
            b = acc;
        } else {
            b = ppowmod(a, e, f);
            if (!b.c.empty())
                b.c[0] = (b.c[0] + p - 1) % p;
            b.trim();
        }
        g = pgcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            PolyP q, r;
            pdivmod(f, g, q, r);
            equal_degree_split(g, d, out, state);
            equal_degree_split(pmonic(q), d, out, state);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<PolyP, int>> pfactor(const PolyP& f0, unsigned long seed)
{
    unsigned long p = f0.p;
    std::vector<std::pair<PolyP, int>> out;
    PolyP f = pmonic(f0);
    if (f.degree() <= 0) return out;
    unsigned long state = seed * 0x9e3779b97f4a7c15UL + 12345;

    // squarefree decomposition via repeated gcd with derivative
    std::vector<std::pair<PolyP, int>> sqf; // (squarefree factor, multiplicity)
    int mult_base = 1;
    while (f.degree() > 0) {
        PolyP d = pderiv(f);
        if (d.is_zero()) {
            // f = g(x^p): replace x^p by x, multiplicity scales by p
            PolyP g;
            g.p = p;
            g.c.resize(f.degree() / p + 1);
            for (size_t i = 0; i < g.c.size(); ++i) g.c[i] = f.c[i * p];
            f = g;
            mult_base *= (int)p;
            continue;
        }
        PolyP g = pgcd(f, d);
        PolyP w, r;
        pdivmod(f, g, w, r); // w squarefree part
        int i = 1;
        while (w.degree() > 0) {
            PolyP y = pgcd(w, g);
            PolyP z, r2;
            pdivmod(w, y, z, r2);
            if (z.degree() > 0) sqf.push_back({pmonic(z), i * mult_base});
            w = y;
            PolyP g2;
            pdivmod(g, y, g2, r2);
            g = g2;
            ++i;
        }
        f = g;
        if (f.degree() > 0 && pderiv(f).is_zero()) continue;
        if (f.degree() > 0) {
            // remaining part is a p-th power component; recurse on it
            auto rest = pfactor(f, seed + 1);
            for (auto& [q, m] : rest) sqf.push_back({q, m * mult_base});
            break;
        }
        break;
    }

    for (auto& [g, mult] : sqf) {
        // distinct-degree
        PolyP h; // x^(p^d) mod g, built incrementally
        h.p = p;
        h.c = {0, 1};
        PolyP rem = g;
        for (int d = 1; 2 * d <= rem.degree(); ++d) {
            h = ppowmod(h, Int(static_cast<unsigned long>(p)), rem);
            PolyP hx = h;
            if (hx.c.size() < 2) hx.c.resize(2, 0);
            hx.c[1] = (hx.c[1] + p - 1) % p;
            hx.trim();
            PolyP gg = pgcd(hx, rem);
            if (gg.degree() > 0) {
                std::vector<PolyP> eq;
                equal_degree_split(gg, d, eq, state);
                for (auto& q : eq) out.push_back({q, mult});
                PolyP q2, r2;
                pdivmod(rem, gg, q2, r2);
                rem = pmonic(q2);
                PolyP tmp;
                pdivmod(h, rem, q2, tmp);
                h = tmp;
            }
        }
        if (rem.degree() > 0) out.push_back({pmonic(rem), mult});
    }

    std::sort(out.begin(), out.end(),
              [](auto& a, auto& b) { return pless(a.first, b.first); });
    return out;
}

// ---- gcd over Z via modular images ----

static unsigned long next_prime_ul(unsigned long p)
{
    Int q;
    mpz_nextprime(q.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t());
    return q.get_ui();
}

IntPoly poly_gcd(const IntPoly& a0, const IntPoly& b0)
{
    if (a0.is_zero()) return b0.is_zero() ? b0 : poly_primitive_part(b0);
    if (b0.is_zero()) return poly_primitive_part(a0);
    IntPoly a = poly_primitive_part(a0), b = poly_primitive_part(b0);
    Int lc = gcd(a.lead(), b.lead());

    unsigned long p = 1000003;
    int best_deg = std::min(a.degree(), b.degree()) + 1;
    Int modulus = 1;
    std::vector<Int> crt; // candidate coefficients (scaled by lc), symmetric range
    while (true) {
        do
            p = next_prime_ul(p);
        while (divides(Int(static_cast<unsigned long>(p)), a.lead()) ||
               divides(Int(static_cast<unsigned long>(p)), b.lead()));

        PolyP g = pgcd(poly_mod(a, p), poly_mod(b, p));
        if (g.degree() == 0) return IntPoly({Int(1)});
        if (g.degree() > best_deg) continue; // unlucky prime
        if (g.degree() < best_deg) {
            best_deg = g.degree();
            modulus = 1;
            crt.assign(best_deg + 1, Int(0));
        }
        // normalize so that lead ≡ lc
        unsigned long scale = mulmod(mod_floor(lc, Int(static_cast<unsigned long>(p))).get_ui(),
                                     p_inv(g.c.back(), p), p);
        std::vector<Int> img(best_deg + 1);
        for (int i = 0; i <= best_deg; ++i)
            img[i] = Int(mulmod(g.c[i], scale, p));
        // CRT combine
        Int newmod = modulus * Int(static_cast<unsigned long>(p));
        for (int i = 0; i <= best_deg; ++i) {
            if (modulus == 1)
                crt[i] = img[i];
            else {
                Int r1 = crt[i];
                Int d = mod_floor((img[i] - r1) * [&] {
                    Int g2, u, v;
                    xgcd(modulus, Int(static_cast<unsigned long>(p)), g2, u, v);
                    return u;
                }(), Int(static_cast<unsigned long>(p)));
                crt[i] = r1 + modulus * d;
            }
            Int sym = mod_floor(crt[i], newmod);
            if (2 * sym > newmod) sym -= newmod;
            crt[i] = sym;
        }
        modulus = newmod;
        IntPoly cand = poly_primitive_part(IntPoly(std::vector<Int>(crt)));
        if (poly_divides(cand, a) && poly_divides(cand, b)) return cand;
    }
}

IntPoly poly_squarefree_part(const IntPoly& f)
{
    if (f.degree() <= 1) return poly_primitive_part(f);
    IntPoly pp = poly_primitive_part(f);
    IntPoly g = poly_gcd(pp, poly_derivative(pp));
    if (g.degree() == 0) return pp;
    return poly_divexact(pp, g);
}

Int poly_resultant(const IntPoly& a, const IntPoly& b)
{
    // Sylvester determinant; the degrees in this artifact stay small
    if (a.is_zero() || b.is_zero()) return 0;
    int m = a.degree(), n = b.degree();
    if (m == 0) {
        Int r = 1;
        for (int i = 0; i < n; ++i) r *= a.c[0];
        return r;
    }
    if (n == 0) {
        Int r = 1;
        for (int i = 0; i < m; ++i) r *= b.c[0];
        return r;
    }
    MatQ S(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S(i, i + j) = Rat(a.c[m - j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) S(n + i, i + j) = Rat(b.c[n - j]);
    Rat d = det(S);
    if (d.get_den() != 1) throw internal_error("resultant not integral");
    return d.get_num();
}

Int poly_discriminant(const IntPoly& f)
{
    if (f.degree() < 1) throw domain_error("discriminant of constant");
    Int r = poly_resultant(f, poly_derivative(f));
    Int lc = f.lead();
    int n = f.degree();
    Int sign = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
    return sign * divexact(r, lc);
}

bool poly_less(const IntPoly& a, const IntPoly& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

// ---- Sturm sequences ----

namespace {

// Rational polynomial remainder sequence, stored as integer polys up to
// positive scaling (signs are all that matter for Sturm).
// divide by the positive content, keeping the sign (Sturm chains are
// sign-sensitive, so the usual primitive-part sign normalization is wrong here)
IntPoly scale_down(const IntPoly& f)
{
    if (f.is_zero()) return f;
    Int g = poly_content(f);
    std::vector<Int> c(f.c);
    for (auto& x : c) x = divexact(x, g);
    return IntPoly(std::move(c));
}

std::vector<IntPoly> sturm_chain(const IntPoly& f)
{
    std::vector<IntPoly> chain;
    IntPoly a = poly_primitive_part(poly_squarefree_part(f));
    if (a.is_zero()) return chain;
    chain.push_back(a);
    IntPoly b = scale_down(poly_derivative(a));
    while (!b.is_zero()) {
        chain.push_back(b);
        const IntPoly& prev = chain[chain.size() - 2];
        // pseudo-remainder of prev by b with positive scaling lb^2 per step
        IntPoly r = prev;
        Int lb2 = b.lead() * b.lead();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int sh = r.degree() - b.degree();
            Int fl = r.lead() * b.lead();
            for (auto& x : r.c) x *= lb2;
            for (int i = 0; i <= b.degree(); ++i) r.c[i + sh] -= fl * b.c[i];
            r.trim();
        }
        b = r.is_zero() ? r : scale_down(-r);
    }
    return chain;
}

int sign_at(const IntPoly& f, const Rat& x)
{
    Rat v = poly_eval(f, x);
    return sgn(v);
}

int sign_at_inf(const IntPoly& f, int dir)
{
    if (f.is_zero()) return 0;
    int s = sgn(f.lead());
    if (dir < 0 && (f.degree() & 1)) s = -s;
    return s;
}

long sign_changes(const std::vector<int>& signs)
{
    long n = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++n;
        last = s;
    }
    return n;
}

} // namespace

long sturm_real_roots(const IntPoly& f, const Rat& lo, const Rat& hi, bool unbounded)
{
    auto chain = sturm_chain(f);
    if (chain.empty()) return 0;
    std::vector<int> slo, shi;
    for (auto& g : chain) {
        slo.push_back(unbounded ? sign_at_inf(g, -1) : sign_at(g, lo));
        shi.push_back(unbounded ? sign_at_inf(g, +1) : sign_at(g, hi));
    }
    return sign_changes(slo) - sign_changes(shi);
}

bool all_roots_real(const IntPoly& f)
{
    IntPoly s = poly_squarefree_part(f);
    if (s.degree() <= 0) return true;
    return sturm_real_roots(s, Rat(0), Rat(0), true) == s.degree();
}

bool roots_all_nonnegative(const IntPoly& f)
{
    IntPoly s = poly_squarefree_part(f);
    if (s.degree() <= 0) return true;
    Rat bound(1);
    for (auto& c : s.c) {
        Rat q = Rat(abs(c)) / Rat(abs(s.lead()));
        if (q + 1 > bound) bound = q + 1;
    }
    // roots in (-B, 0]; a root at exactly 0 is fine
    long neg = sturm_real_roots(s, -bound, Rat(0));
    if (poly_eval(s, Rat(0)) == 0) --neg;
    return neg <= 0;
}

void largest_real_root_interval(const IntPoly& f, Rat& lo, Rat& hi)
{
    IntPoly s = poly_squarefree_part(f);
    Rat bound(1);
    for (auto& c : s.c) {
        Rat q = Rat(abs(c)) / Rat(abs(s.lead()));
        if (q + 1 > bound) bound = q + 1;
    }
    if (sturm_real_roots(s, -bound, bound) < 1) throw domain_error("no real root");
    lo = -bound;
    hi = bound;
    // bisect keeping the top root in (lo, hi]
    for (int it = 0; it < 200 && sturm_real_roots(s, lo, hi) > 1; ++it) {
        Rat mid = (lo + hi) / 2;
        if (sturm_real_roots(s, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    // now exactly one root in (lo, hi]; tighten for numeric quality
    for (int it = 0; it < 80; ++it) {
        Rat mid = (lo + hi) / 2;
        if (sturm_real_roots(s, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
}

double largest_real_root(const IntPoly& f)
{
    Rat lo, hi;
    largest_real_root_interval(f, lo, hi);
    return (lo.get_d() + hi.get_d()) / 2;
}

} // namespace qp
