#include "qp/rational.hpp"

#include <algorithm>

namespace qp {

std::vector<long> primes_up_to(long n)
{
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    for (long i = 2; i * i <= n; ++i)
        if (sieve[i])
            for (long j = i * i; j <= n; j += i) sieve[j] = false;
    for (long i = 2; i <= n; ++i)
        if (sieve[i]) out.push_back(i);
    return out;
}

namespace {

Int pollard_rho(const Int& n)
{
    // Brent's variant; n odd, composite, not a prime power of interest.
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int diff, q = 1;
        long count = 0;
        while (d == 1) {
            x = mod_floor(x * x + c, n);
            y = mod_floor(y * y + c, n);
            y = mod_floor(y * y + c, n);
            diff = abs(x - y);
            if (diff == 0) break;
            q = mod_floor(q * diff, n);
            if (++count % 64 == 0) {
                d = gcd(q, n);
                if (d > 1) break;
            }
        }
        if (d == 1) d = gcd(abs(x - y), n);
        if (d > 1 && d < n) return d;
    }
}

void factor_rec(Int n, std::vector<Int>& primes)
{
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(divexact(n, d), primes);
}

} // namespace

std::vector<std::pair<Int, int>> factor_integer(Int n)
{
    if (n == 0) throw domain_error("factor_integer(0)");
    n = abs(n);
    std::vector<Int> primes;
    static const std::vector<long> small = primes_up_to(4000);
    for (long p : small) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.push_back(Int(p));
            n = divexact(n, Int(p));
        }
        if (n == 1) break;
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, int>> out;
    for (auto& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::vector<Int> squarefree_prime_divisors(const Int& n)
{
    std::vector<Int> out;
    for (auto& [p, e] : factor_integer(n)) out.push_back(p);
    return out;
}

Rat rat_from_string(const std::string& s)
{
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw domain_error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

std::string rat_string(const Rat& r)
{
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

} // namespace qp
