#pragma once

#include "qp/rational.hpp"

#include <vector>

namespace qp {

// Integer polynomial, coefficients ascending by degree, trimmed so the
// leading coefficient is nonzero (the zero polynomial is the empty vector).
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static IntPoly from_longs(const std::vector<long>& v);

    void trim()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for zero
    const Int& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Int coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Int(0); }

    bool operator==(const IntPoly& o) const { return c == o.c; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    std::string str(const std::string& var = "x") const;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const Int& k, const IntPoly& a);
IntPoly operator-(const IntPoly& a);

Int poly_eval(const IntPoly& f, const Int& x);
Rat poly_eval(const IntPoly& f, const Rat& x);
IntPoly poly_derivative(const IntPoly& f);
Int poly_content(const IntPoly& f);
IntPoly poly_primitive_part(const IntPoly& f); // sign of lead preserved

// Exact division; throws internal_error if b does not divide a over Z.
IntPoly poly_divexact(const IntPoly& a, const IntPoly& b);
// Division by a monic divisor: a = q*b + r with deg r < deg b.
void poly_divmod_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);
// True if b | a over Q (and over Z when both primitive).
bool poly_divides(const IntPoly& b, const IntPoly& a);

// gcd over Z, primitive with positive leading coefficient (modular algorithm).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
IntPoly poly_squarefree_part(const IntPoly& f);

Int poly_resultant(const IntPoly& a, const IntPoly& b);
Int poly_discriminant(const IntPoly& f);

// Deterministic total order: by degree, then coefficients from the constant up.
bool poly_less(const IntPoly& a, const IntPoly& b);

// Number of distinct real roots in (lo, hi], lo < hi, via Sturm chains;
// pass unbounded = true to count over all of R. Exact.
long sturm_real_roots(const IntPoly& f, const Rat& lo, const Rat& hi, bool unbounded = false);
bool all_roots_real(const IntPoly& f);
// All real roots of f are >= 0 (f squarefree not required).
bool roots_all_nonnegative(const IntPoly& f);

// Isolating interval (lo, hi] for the largest real root; requires one to exist.
void largest_real_root_interval(const IntPoly& f, Rat& lo, Rat& hi);
double largest_real_root(const IntPoly& f);

// ---- polynomials over Z/p for word-sized primes ----

struct PolyP {
    unsigned long p = 0;
    std::vector<unsigned long> c; // ascending, trimmed

    void trim()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
};

PolyP poly_mod(const IntPoly& f, unsigned long p);
PolyP pmul(const PolyP& a, const PolyP& b);
PolyP psub(const PolyP& a, const PolyP& b);
void pdivmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r);
PolyP pgcd(PolyP a, PolyP b); // monic
PolyP pmonic(const PolyP& a);
PolyP ppowmod(const PolyP& a, Int e, const PolyP& m);
bool pis_squarefree(const PolyP& a);
// Complete factorization over F_p (Cantor–Zassenhaus with a deterministic
// seed), factors monic, sorted by (degree, coefficients).
std::vector<std::pair<PolyP, int>> pfactor(const PolyP& f, unsigned long seed = 1);

unsigned long p_inv(unsigned long a, unsigned long p);

} // namespace qp
