#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qp {

using Int = mpz_class;
using Rat = mpq_class;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool fits_long(const Int& z) { return z.fits_slong_p(); }
inline long to_long(const Int& z)
{
    if (!z.fits_slong_p()) throw internal_error("integer out of long range");
    return z.get_si();
}

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b)
{
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// (g, u, v) with u*a + v*b = g >= 0
inline void xgcd(const Int& a, const Int& b, Int& g, Int& u, Int& v)
{
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Int divexact(const Int& a, const Int& b)
{
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a)
{
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// floor division remainder in [0, |m|)
inline Int mod_floor(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int isqrt(const Int& a)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline std::optional<Int> perfect_sqrt(const Int& a)
{
    if (a < 0) return std::nullopt;
    if (mpz_perfect_square_p(a.get_mpz_t()) == 0) return std::nullopt;
    return isqrt(a);
}

inline int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}
inline int kronecker(const Int& a, long n)
{
    return mpz_kronecker_si(a.get_mpz_t(), n);
}

inline bool is_prime(const Int& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline long valuation(Int n, const Int& p)
{
    if (n == 0) throw domain_error("valuation of zero");
    long v = 0;
    while (divides(p, n)) {
        n = divexact(n, p);
        ++v;
    }
    return v;
}

std::vector<long> primes_up_to(long n);

// Prime factorization with multiplicity, ascending. Trial division plus
// Pollard rho; meant for the moderate integers of this artifact, not
// cryptographic sizes.
std::vector<std::pair<Int, int>> factor_integer(Int n);

std::vector<Int> squarefree_prime_divisors(const Int& n);

inline bool is_squarefree(const Int& n)
{
    if (n == 0) return false;
    for (auto& [p, e] : factor_integer(abs(n)))
        if (e > 1) return false;
    return true;
}

// Parses "a/b" or "a"; inverse of rat_string.
Rat rat_from_string(const std::string& s);
std::string rat_string(const Rat& r);

inline Rat rat(const Int& num, const Int& den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace qp
