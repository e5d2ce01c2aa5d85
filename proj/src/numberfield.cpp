#include "qp/numberfield.hpp"

#include "qp/polyfactor.hpp"

#include <algorithm>
#include <sstream>

namespace qp {

NumberField NumberField::rationals()
{
    NumberField f;
    f.min_poly = IntPoly({Int(0), Int(1)}); // t, generator 0
    f.degree = 1;
    f.basis = MatQ::identity(1);
    f.basis_inv = MatQ::identity(1);
    f.disc = 1;
    return f;
}

NFElement NumberField::one() const
{
    std::vector<Rat> c(degree, Rat(0));
    c[0] = 1; // first integral basis element is 1
    return NFElement(std::move(c));
}

NFElement NumberField::from_rational(const Rat& r) const
{
    std::vector<Rat> c(degree, Rat(0));
    c[0] = r;
    return NFElement(std::move(c));
}

NFElement NumberField::generator() const
{
    std::vector<Rat> p(degree, Rat(0));
    if (degree == 1) {
        // rational field: generator is the root of the degree-1 min poly
        Rat root = Rat(-Rat(min_poly.coeff(0)) / Rat(min_poly.coeff(1)));
        return from_rational(root);
    }
    p[1] = 1;
    return from_power_basis(p);
}

NFElement NumberField::add(const NFElement& a, const NFElement& b) const
{
    std::vector<Rat> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = a.coords[i] + b.coords[i];
    return NFElement(std::move(c));
}

NFElement NumberField::sub(const NFElement& a, const NFElement& b) const
{
    std::vector<Rat> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = a.coords[i] - b.coords[i];
    return NFElement(std::move(c));
}

NFElement NumberField::neg(const NFElement& a) const
{
    std::vector<Rat> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = -a.coords[i];
    return NFElement(std::move(c));
}

NFElement NumberField::mul(const Rat& r, const NFElement& a) const
{
    std::vector<Rat> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = r * a.coords[i];
    return NFElement(std::move(c));
}

std::vector<Rat> NumberField::to_power_basis(const NFElement& a) const
{
    return a.coords * basis;
}

NFElement NumberField::from_power_basis(const std::vector<Rat>& p) const
{
    return NFElement(p * basis_inv);
}

namespace {

// product of two power-basis coordinate vectors modulo the min poly
std::vector<Rat> pb_mul(const IntPoly& f, const std::vector<Rat>& a, const std::vector<Rat>& b)
{
    int d = f.degree();
    std::vector<Rat> prod(2 * d - 1, Rat(0));
    for (int i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
    }
    // reduce modulo monic f
    for (int k = 2 * d - 2; k >= d; --k) {
        if (prod[k] == 0) continue;
        Rat c = prod[k];
        prod[k] = 0;
        for (int i = 0; i < d; ++i) prod[k - d + i] -= c * Rat(f.c[i]);
    }
    prod.resize(d);
    return prod;
}

} // namespace

NFElement NumberField::mul(const NFElement& a, const NFElement& b) const
{
    if (degree == 1) return NFElement({a.coords[0] * b.coords[0]});
    return from_power_basis(pb_mul(min_poly, to_power_basis(a), to_power_basis(b)));
}

NFElement NumberField::inv(const NFElement& a) const
{
    if (a.is_zero()) throw domain_error("number field division by zero");
    if (degree == 1) return NFElement({1 / a.coords[0]});
    // extended Euclid in Q[t] against the min poly
    std::vector<Rat> p = to_power_basis(a);
    // represent rational polys as vector<Rat>
    auto deg = [](const std::vector<Rat>& v) {
        int d = (int)v.size() - 1;
        while (d >= 0 && v[d] == 0) --d;
        return d;
    };
    std::vector<Rat> r0(min_poly.c.size());
    for (size_t i = 0; i < min_poly.c.size(); ++i) r0[i] = Rat(min_poly.c[i]);
    std::vector<Rat> r1 = p;
    std::vector<Rat> t0(degree + 1, Rat(0)), t1(degree + 1, Rat(0));
    t1[0] = 1;
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rat> q(degree + 1, Rat(0));
        std::vector<Rat> r = r0;
        int dr1 = deg(r1);
        Rat lead = r1[dr1];
        while (deg(r) >= dr1) {
            int k = deg(r) - dr1;
            Rat f = r[deg(r)] / lead;
            q[k] += f;
            for (int i = 0; i <= dr1; ++i) r[i + k] -= f * r1[i];
        }
        // t = t0 - q*t1
        std::vector<Rat> t(degree + 1, Rat(0));
        for (int i = 0; i <= degree; ++i) t[i] = t0[i];
        for (int i = 0; i <= degree; ++i) {
            if (q[i] == 0) continue;
            for (int j = 0; j + i <= degree; ++j) t[i + j] -= q[i] * t1[j];
        }
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if (deg(r1) != 0) throw internal_error("nf inv: gcd not constant");
    Rat c = r1[0];
    std::vector<Rat> res(degree, Rat(0));
    for (int i = 0; i < degree; ++i) res[i] = t1[i] / c;
    return from_power_basis(res);
}

NFElement NumberField::div(const NFElement& a, const NFElement& b) const
{
    return mul(a, inv(b));
}

Rat NumberField::norm(const NFElement& a) const
{
    if (degree == 1) return a.coords[0];
    // resultant(f, g)/lc(f)^deg g with g the power-basis polynomial of a;
    // computed via the determinant of the multiplication matrix instead.
    MatQ M(degree, degree);
    for (int i = 0; i < degree; ++i) {
        std::vector<Rat> ei(degree, Rat(0));
        ei[i] = 1;
        NFElement prod = mul(a, NFElement(ei));
        for (int j = 0; j < degree; ++j) M(i, j) = prod.coords[j];
    }
    return det(M);
}

bool NumberField::is_unit(const NFElement& a) const
{
    if (!a.is_integral()) return false;
    Rat n = norm(a);
    return n == 1 || n == -1;
}

double NumberField::embed(const NFElement& a) const
{
    double root = (degree == 1) ? Rat(-Rat(min_poly.coeff(0)) / Rat(min_poly.coeff(1))).get_d()
                                : largest_real_root(min_poly);
    auto p = to_power_basis(a);
    double v = 0;
    for (int i = degree - 1; i >= 0; --i) v = v * root + p[i].get_d();
    return v;
}

int NumberField::sign(const NFElement& a) const
{
    if (a.is_zero()) return 0;
    auto p = to_power_basis(a);
    if (degree == 1) return sgn(p[0]);
    Rat lo, hi;
    largest_real_root_interval(min_poly, lo, hi);
    auto eval = [&](const Rat& x) {
        Rat v = 0;
        for (int i = degree - 1; i >= 0; --i) v = v * x + p[i];
        return v;
    };
    for (int it = 0; it < 20000; ++it) {
        int slo = sgn(eval(lo)), shi = sgn(eval(hi));
        if (slo == shi && slo != 0) return slo;
        Rat mid = (lo + hi) / 2;
        if (sturm_real_roots(min_poly, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    throw internal_error("certified sign did not converge");
}

std::string NumberField::str(const NFElement& a, const std::string& var) const
{
    auto p = to_power_basis(a);
    std::ostringstream os;
    bool first = true;
    for (int i = degree - 1; i >= 0; --i) {
        if (p[i] == 0) continue;
        Rat c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        if (ac != 1 || i == 0) os << rat_string(ac);
        if (i > 0) {
            if (ac != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

bool dedekind_p_maximal(const IntPoly& f, const Int& p)
{
    if (!p.fits_ulong_p()) throw domain_error("dedekind: prime too large");
    unsigned long pl = p.get_ui();
    PolyP fp = poly_mod(f, pl);
    auto fac = pfactor(fp, 3);
    // g = prod g_i, h = prod g_i^(e_i - 1), so f ≡ g*h (mod p)
    PolyP g{pl, {1}}, h{pl, {1}};
    for (auto& [gi, e] : fac) {
        g = pmul(g, gi);
        for (int k = 1; k < e; ++k) h = pmul(h, gi);
    }
    // F = (g~ * h~ - f)/p over Z, using arbitrary monic lifts
    IntPoly gz, hz;
    {
        std::vector<Int> c(g.c.size());
        for (size_t i = 0; i < g.c.size(); ++i) c[i] = Int(g.c[i]);
        gz = IntPoly(std::move(c));
        std::vector<Int> c2(h.c.size());
        for (size_t i = 0; i < h.c.size(); ++i) c2[i] = Int(h.c[i]);
        hz = IntPoly(std::move(c2));
    }
    IntPoly F = gz * hz - f;
    std::vector<Int> fc(F.c);
    for (auto& x : fc) x = divexact(x, p);
    PolyP Fp = poly_mod(IntPoly(std::move(fc)), pl);
    PolyP d = pgcd(pgcd(Fp, g), h);
    return d.degree() == 0;
}

namespace {

// Order in Q[t]/(f) given by a row basis over the power basis. Provides the
// p-radical / multiplier-ring Round-2 step.
struct OrderCtx {
    const IntPoly& f;
    int d;
    MatQ W;     // rows = basis in power basis; W(0,*) need not be 1 during the loop
    MatQ W_inv;

    OrderCtx(const IntPoly& f_, MatQ w) : f(f_), d(f_.degree()), W(std::move(w))
    {
        W_inv = inverse(W);
    }
    // multiply basis elements i, j, coordinates in the order basis
    std::vector<Rat> mul_basis(int i, int j) const
    {
        std::vector<Rat> a = W.row(i), b = W.row(j);
        return pb_mul(f, a, b) * W_inv;
    }
    std::vector<Rat> mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const
    {
        return pb_mul(f, x * W, y * W) * W_inv;
    }
};

// kernel mod p of a (rows x cols) F_p matrix, returned as row vectors
std::vector<std::vector<unsigned long>> kernel_mod_p(std::vector<std::vector<unsigned long>> M,
                                                     long rows, long cols, unsigned long p)
{
    // Gaussian elimination on M (rows act from the left: we want x with xM=0,
    // so eliminate on the transpose: build the standard kernel of M^T x^T.)
    // Here М is given as the matrix whose row i is the image of basis vector
    // i; kernel = {x : sum x_i M[i] = 0}.
    std::vector<long> pivot_of_col(cols, -1);
    std::vector<std::vector<unsigned long>> ident(rows, std::vector<unsigned long>(rows, 0));
    for (long i = 0; i < rows; ++i) ident[i][i] = 1;
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long piv = -1;
        for (long i = r; i < rows; ++i)
            if (M[i][c] % p != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[piv], M[r]);
        std::swap(ident[piv], ident[r]);
        unsigned long inv = p_inv(M[r][c] % p, p);
        for (long j = 0; j < cols; ++j) M[r][j] = (unsigned long)((unsigned __int128)M[r][j] * inv % p);
        for (long j = 0; j < rows; ++j)
            ident[r][j] = (unsigned long)((unsigned __int128)ident[r][j] * inv % p);
        for (long i = 0; i < rows; ++i) {
            if (i == r) continue;
            unsigned long fct = M[i][c] % p;
            if (!fct) continue;
            for (long j = 0; j < cols; ++j)
                M[i][j] = (M[i][j] + (unsigned __int128)(p - fct) * M[r][j]) % p;
            for (long j = 0; j < rows; ++j)
                ident[i][j] = (ident[i][j] + (unsigned __int128)(p - fct) * ident[r][j]) % p;
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<std::vector<unsigned long>> ker;
    for (long i = r; i < rows; ++i) ker.push_back(ident[i]);
    return ker;
}

} // namespace

NumberField nf_maximal_order(const IntPoly& f)
{
    if (!f.is_monic()) throw domain_error("nf_maximal_order: polynomial not monic");
    if (f.degree() < 1 || f.degree() > 8)
        throw domain_error("nf_maximal_order: unsupported degree");
    if (f.degree() > 1 && !is_irreducible(f)) throw domain_error("nf_maximal_order: reducible polynomial");

    NumberField nf;
    nf.min_poly = f;
    nf.degree = f.degree();
    int d = nf.degree;
    if (d == 1) {
        nf.basis = MatQ::identity(1);
        nf.basis_inv = MatQ::identity(1);
        nf.disc = 1;
        return nf;
    }

    Int disc_f = poly_discriminant(f);
    MatQ W = MatQ::identity(d);

    for (auto& [p, e] : factor_integer(disc_f)) {
        if (e < 2) continue;
        if (dedekind_p_maximal(f, p)) continue;
        unsigned long pl = p.get_ui();
        while (true) {
            OrderCtx ctx(f, W);
            // radical of O/pO: kernel of x -> x^(p^k), p^k >= d
            Int q = p;
            while (q < d) q *= p;
            // images of basis elements under Frobenius power, coords mod p
            std::vector<std::vector<unsigned long>> frob(d, std::vector<unsigned long>(d));
            for (int i = 0; i < d; ++i) {
                // compute basis_i^(q) by square and multiply in the order
                std::vector<Rat> base(d, Rat(0));
                base[i] = 1; // basis element i
                std::vector<Rat> one_pb(d, Rat(0));
                one_pb[0] = 1;
                std::vector<Rat> result = one_pb * ctx.W_inv; // 1 in order coords
                Int exp = q;
                while (exp > 0) {
                    if (mpz_odd_p(exp.get_mpz_t())) result = ctx.mul(result, base);
                    exp >>= 1;
                    if (exp > 0) base = ctx.mul(base, base);
                }
                for (int jj = 0; jj < d; ++jj) {
                    Rat v = result[jj];
                    // coordinates of an integral element in the order basis are integers
                    if (v.get_den() != 1)
                        throw internal_error("nf_maximal_order: non-integral structure");
                    frob[i][jj] = mod_floor(v.get_num(), p).get_ui();
                }
            }
            auto ker = kernel_mod_p(frob, d, d, pl);
            // J = pO + kernel lifts, in order coordinates (integer lattice)
            MatZ gens((long)ker.size() + d, d);
            for (size_t i = 0; i < ker.size(); ++i)
                for (int j = 0; j < d; ++j) gens((long)i, j) = Int(ker[i][j]);
            for (int i = 0; i < d; ++i) gens((long)ker.size() + i, i) = p;
            MatZ J(d, d);
            {
                MatZ H, U;
                hermite_normal_form(gens, H, U);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) J(i, j) = H(i, j);
            }
            // multiplier ring {x = y/p : y*J_r ∈ pJ for all r}.  With
            // adj(J) = det(J) * J^{-1}, membership v ∈ pJ is the integer
            // congruence v*adj(J) ≡ 0 (mod p*det(J)).
            Int Jdet = det(J);
            MatQ Jadj_q = inverse(to_rational(J));
            MatZ Jadj(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Rat v = Jadj_q(i, j) * Rat(Jdet);
                    if (v.get_den() != 1) throw internal_error("adjugate not integral");
                    Jadj(i, j) = v.get_num();
                }
            Int m = p * Jdet;
            // stack the congruence columns: y * B ≡ 0 (mod m)
            MatZ B(d, d * d);
            for (int r = 0; r < d; ++r) {
                // T_r = right multiplication by J_r on order coordinates
                std::vector<Rat> jr(d);
                for (int j = 0; j < d; ++j) jr[j] = Rat(J(r, j));
                for (int i = 0; i < d; ++i) {
                    std::vector<Rat> yi(d, Rat(0));
                    yi[i] = 1;
                    std::vector<Rat> prod = ctx.mul(yi, jr); // integer coords
                    std::vector<Int> pz(d);
                    for (int j = 0; j < d; ++j) {
                        if (prod[j].get_den() != 1)
                            throw internal_error("order not multiplicatively closed");
                        pz[j] = prod[j].get_num();
                    }
                    std::vector<Int> w = pz * Jadj;
                    for (int j = 0; j < d; ++j) B(i, r * d + j) = w[j];
                }
            }
            // solution lattice {y : yB ≡ 0 mod m} via the kernel of [B; -mI]
            MatZ M2(d + d * d, d * d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d * d; ++j) M2(i, j) = B(i, j);
            for (int i = 0; i < d * d; ++i) M2(d + i, i) = -m;
            MatZ K = left_kernel(M2);
            MatZ L(K.m, d);
            for (long i = 0; i < K.m; ++i)
                for (int j = 0; j < d; ++j) L(i, j) = K(i, j);
            MatZ Lb = hnf(L);
            // O' basis rows: (1/p) * Lb * W in the power basis
            MatQ Wnew(d, d);
            for (int i = 0; i < d; ++i) {
                std::vector<Rat> yc(d);
                for (int j = 0; j < d; ++j) yc[j] = rat(Lb(i, j), p);
                auto pb = yc * ctx.W;
                for (int j = 0; j < d; ++j) Wnew(i, j) = pb[j];
            }
            Rat dnew = abs(det(Wnew)), dold = abs(det(W));
            W = Wnew;
            if (dnew == dold) break; // index stable: p-maximal
        }
    }

    // canonical form: HNF with reversed column order so the last row is the
    // rational 1; then reverse rows so basis[0] = 1 and degrees ascend
    {
        MatQ Wrev(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) Wrev(i, j) = W(i, d - 1 - j);
        MatZ N;
        Int den;
        clear_denominators(Wrev, N, den);
        MatZ H = hnf(N);
        MatQ Wout(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) Wout(d - 1 - i, d - 1 - j) = rat(H(i, j), den);
        nf.basis = Wout;
    }
    nf.basis_inv = inverse(nf.basis);
    // field discriminant: disc(f) / index^2 with index = 1/det(basis)
    Rat dw = det(nf.basis);
    Rat idx2 = 1 / (dw * dw);
    Rat dd = Rat(disc_f) / idx2;
    if (dd.get_den() != 1) throw internal_error("nf_maximal_order: discriminant not integral");
    nf.disc = dd.get_num();
    return nf;
}

} // namespace qp
