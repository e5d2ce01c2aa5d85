#include "qp/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace qp {

bool is_positive_definite(const MatQ& gram)
{
    if (gram.m != gram.n) return false;
    for (long i = 0; i < gram.m; ++i)
        for (long j = 0; j < i; ++j)
            if (gram(i, j) != gram(j, i)) return false;
    // leading principal minors
    MatQ M = gram;
    for (long k = 0; k < gram.m; ++k) {
        MatQ sub(k + 1, k + 1);
        for (long i = 0; i <= k; ++i)
            for (long j = 0; j <= k; ++j) sub(i, j) = M(i, j);
        if (det(sub) <= 0) return false;
    }
    return true;
}

ZLattice lll_reduce(const ZLattice& l, const Rat& delta)
{
    if (!(delta > Rat(1, 4) && delta < 1)) throw domain_error("lll_reduce: delta outside (1/4,1)");
    if (!is_positive_definite(l.gram)) throw domain_error("lll_reduce: gram not positive definite");
    long n = l.dim();
    MatQ g = l.gram;
    MatZ U = MatZ::identity(n);

    // exact Gram-Schmidt data recomputed incrementally
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    auto recompute = [&]() {
        // mu and B from the current Gram matrix
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < i; ++j) {
                Rat s = g(i, j);
                for (long k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = s / B[j];
            }
            Rat s = g(i, i);
            for (long k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
            B[i] = s;
        }
    };
    auto row_op = [&](long i, const Int& q, long j) {
        // b_i -= q * b_j, applied to Gram and transform
        for (long k = 0; k < n; ++k) U(i, k) -= q * U(j, k);
        for (long k = 0; k < n; ++k) {
            g(i, k) -= Rat(q) * g(j, k);
        }
        for (long k = 0; k < n; ++k) {
            g(k, i) -= Rat(q) * g(k, j);
        }
    };
    auto swap_rows = [&](long i, long j) {
        for (long k = 0; k < n; ++k) std::swap(U(i, k), U(j, k));
        for (long k = 0; k < n; ++k) std::swap(g(i, k), g(j, k));
        for (long k = 0; k < n; ++k) std::swap(g(k, i), g(k, j));
    };

    recompute();
    long k = 1;
    while (k < n) {
        // size reduction
        for (long j = k - 1; j >= 0; --j) {
            Rat m = mu[k][j];
            Int q;
            // nearest integer
            Rat half(1, 2);
            Rat shifted = m + half;
            mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
            if (q != 0) {
                row_op(k, q, j);
                recompute();
            }
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            swap_rows(k, k - 1);
            recompute();
            k = std::max(1L, k - 1);
        }
    }
    return ZLattice(std::move(g), U * l.basis_change);
}

MatZ doubled_gram(const MatQ& gram)
{
    MatZ A(gram.m, gram.n);
    for (long i = 0; i < gram.m * gram.n; ++i) {
        Rat v = gram.a[i] * 2;
        if (v.get_den() != 1)
            throw domain_error("quadratic form not integer valued on the lattice");
        A.a[i] = v.get_num();
    }
    for (long i = 0; i < gram.m; ++i)
        if (mpz_odd_p(A(i, i).get_mpz_t()))
            throw domain_error("quadratic form not integer valued on the lattice");
    return A;
}

namespace {

struct Chol {
    long n;
    std::vector<double> q;  // q[i][j]: diagonal q_ii and coefficients mu_ij (j>i)
    double& at(long i, long j) { return q[i * n + j]; }
};

// floating Cholesky of A/2 in the Fincke–Pohst Q(v) = sum q_ii (v_i + sum mu_ij v_j)^2 shape
bool fp_cholesky(const MatZ& A, Chol& c)
{
    long n = A.m;
    c.n = n;
    c.q.assign(n * n, 0.0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) c.at(i, j) = A(i, j).get_d() / 2.0;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            if (c.at(i, i) <= 0) return false;
            double t = c.at(i, j);
            c.at(j, i) = t;
            c.at(i, j) = t / c.at(i, i);
        }
        for (long k = i + 1; k < n; ++k)
            for (long l = k; l < n; ++l) c.at(k, l) -= c.at(k, i) * c.at(i, l);
    }
    for (long i = 0; i < n; ++i)
        if (c.at(i, i) <= 0) return false;
    return true;
}

bool fits_int64_path(const MatZ& A, const Int& bound, const Chol& c)
{
    Int maxa = 0;
    for (auto& x : A.a) {
        Int ax = abs(x);
        if (ax > maxa) maxa = ax;
    }
    if (maxa == 0) maxa = 1;
    double maxstep = 0;
    for (long i = 0; i < c.n; ++i) {
        double q = c.q[i * c.n + i];
        if (q <= 0) return false;
        maxstep = std::max(maxstep, std::sqrt(bound.get_d() / q) + 3);
    }
    // worst intermediate value ~ maxa * (n * maxC)^2; demand a wide margin
    double worst = maxa.get_d() * (c.n * maxstep) * (c.n * maxstep) * 4;
    return maxa.fits_slong_p() && bound.fits_slong_p() && worst < 4.0e18 &&
           maxstep < 1.5e9;
}

// Generic exact enumerator over Int arithmetic.
// Visits one representative per +-v pair (last nonzero coordinate positive).
template <class Visit>
void enumerate_generic(const MatZ& A, const Int& bound, Visit&& visit)
{
    long n = A.m;
    Chol c;
    if (!fp_cholesky(A, c)) throw domain_error("enumerate: gram not positive definite");
    std::vector<Int> v(n, Int(0));
    std::vector<double> center(n, 0.0);

    // partial exact norms: T[i] = Q(v_i..v_{n-1} with lower coords zero)
    std::function<void(long)> rec = [&](long i) {
        if (i < 0) {
            // compute exact norm
            Int s = 0;
            for (long x = 0; x < n; ++x)
                for (long y = 0; y < n; ++y) s += A(x, y) * v[x] * v[y];
            if (s > 2 * bound || s == 0) return;
            // canonical representative: last nonzero coordinate positive
            for (long x = n - 1; x >= 0; --x) {
                if (v[x] > 0) break;
                if (v[x] < 0) return;
            }
            bool all_zero = true;
            for (auto& z : v)
                if (z != 0) {
                    all_zero = false;
                    break;
                }
            if (all_zero) return;
            visit(v, s / 2);
            return;
        }
        // center for coordinate i given fixed v_{i+1..}
        double ci = 0;
        for (long j = i + 1; j < n; ++j) ci += c.at(i, j) * v[j].get_d();
        // remaining budget: bound - sum_{k>i} q_kk (v_k + c_k)^2, done in floats
        double rem = bound.get_d();
        for (long k = i + 1; k < n; ++k) {
            double ck = 0;
            for (long j = k + 1; j < n; ++j) ck += c.at(k, j) * v[j].get_d();
            double t = v[k].get_d() + ck;
            rem -= c.at(k, k) * t * t;
        }
        if (rem < -0.5) return;
        double radius = rem > 0 ? std::sqrt(rem / c.at(i, i)) : 0;
        long lo = (long)std::floor(-ci - radius) - 1;
        long hi = (long)std::ceil(-ci + radius) + 1;
        for (long x = lo; x <= hi; ++x) {
            v[i] = x;
            rec(i - 1);
        }
        v[i] = 0;
    };
    rec(n - 1);
}

// int64 histogram enumerator, specialized for speed; A entries must fit the
// checked ranges. Outer coordinate is index n-1; outer_lo/outer_hi restrict
// the positive half-range [max(1,outer_lo), outer_hi]; pass include_base to
// enumerate the x_{n-1} = 0 hyperplane as well.
void hist_int64(const MatZ& Az, long bound, std::vector<uint32_t>& hist, long outer_lo,
                long outer_hi, bool include_base)
{
    long n = Az.m;
    std::vector<long> A(n * n);
    for (long i = 0; i < n * n; ++i) A[i] = Az.a[i].get_si();
    Chol c;
    fp_cholesky(Az, c);
    long B2 = 2 * bound;

    std::vector<long> v(n, 0);
    // recursive over coordinates n-1 .. 1, innermost 0 is a linear scan
    std::function<void(long)> rec = [&](long i) {
        if (i == 0) {
            // exact quadratic in v0: s(v0) = A00 v0^2 + 2 L v0 + C with
            // L = sum_{j>0} A0j vj, C = sum_{j,k>0} Ajk vj vk
            long a00 = A[0];
            long L = 0;
            for (long j = 1; j < n; ++j) L += A[j] * v[j];
            long C = 0;
            for (long j = 1; j < n; ++j)
                for (long k = 1; k < n; ++k) C += A[j * n + k] * v[j] * v[k];
            double ctr = (double)L / a00;
            double disc = (double)B2 - ((double)C - (double)L * ctr);
            long lo, hi;
            if (disc < 0) {
                lo = 0;
                hi = -1;
            } else {
                double r = std::sqrt(disc / a00);
                lo = (long)std::floor(-ctr - r) - 1;
                hi = (long)std::ceil(-ctr + r) + 1;
            }
            // canonical half: if all higher coords are zero, take v0 >= 1
            bool higher_zero = true;
            for (long j = 1; j < n; ++j)
                if (v[j] != 0) {
                    higher_zero = false;
                    break;
                }
            if (higher_zero && lo < 1) lo = 1;
            if (lo > hi) return;
            long s = a00 * lo * lo + 2 * L * lo + C; // even
            long d1 = a00 * (2 * lo + 1) + 2 * L;    // s(x+1)-s(x)
            long d2 = 2 * a00;
            for (long x = lo; x <= hi; ++x) {
                if (s >= 0 && s <= B2) hist[s >> 1] += 2;
                s += d1;
                d1 += d2;
            }
            return;
        }
        double ci = 0;
        for (long j = i + 1; j < n; ++j) ci += c.at(i, j) * (double)v[j];
        double rem = (double)bound;
        for (long k = i + 1; k < n; ++k) {
            double ck = 0;
            for (long j = k + 1; j < n; ++j) ck += c.at(k, j) * (double)v[j];
            double t = (double)v[k] + ck;
            rem -= c.at(k, k) * t * t;
        }
        if (rem < -0.5) return;
        double radius = rem > 0 ? std::sqrt(rem / c.at(i, i)) : 0;
        long lo = (long)std::floor(-ci - radius) - 1;
        long hi = (long)std::ceil(-ci + radius) + 1;
        bool higher_zero = true;
        for (long j = i + 1; j < n; ++j)
            if (v[j] != 0) {
                higher_zero = false;
                break;
            }
        // if every higher coordinate is zero, only the nonnegative half is
        // canonical; the positive-coordinate constraint lands at level 0
        if (higher_zero) lo = std::max(lo, 0L);
        for (long x = lo; x <= hi; ++x) {
            v[i] = x;
            rec(i - 1);
        }
        v[i] = 0;
    };

    long i = n - 1;
    if (n == 1) {
        if (include_base) {
            long a00 = A[0];
            for (long x = std::max(1L, outer_lo);; ++x) {
                long s = a00 * x * x;
                if (s > B2) break;
                hist[s >> 1] += 2;
            }
        }
        return;
    }
    // positive outer range
    double rad = std::sqrt((double)bound / c.at(i, i));
    long hi = std::min(outer_hi, (long)std::ceil(rad) + 1);
    for (long x = std::max(1L, outer_lo); x <= hi; ++x) {
        v[i] = x;
        rec(i - 1);
    }
    v[i] = 0;
    if (include_base) rec(i - 1); // x_{n-1} = 0 plane, canonical halves below
}

} // namespace

std::vector<uint32_t> enumerate_by_norm(const MatZ& A, long bound)
{
    auto parts = enumerate_by_norm_partitioned(A, bound, 1);
    return parts[0];
}

std::vector<std::vector<uint32_t>> enumerate_by_norm_partitioned(const MatZ& A, long bound,
                                                                 int parts)
{
    if (bound < 0) throw domain_error("enumerate_by_norm: negative bound");
    Chol c;
    if (!fp_cholesky(A, c)) throw domain_error("enumerate_by_norm: gram not positive definite");
    if (parts < 1) parts = 1;
    long n = A.m;
    std::vector<std::vector<uint32_t>> out(parts, std::vector<uint32_t>(bound + 1, 0));

    if (!fits_int64_path(A, Int(bound), c)) {
        // exact big-integer fallback, single part
        enumerate_generic(A, Int(bound), [&](const std::vector<Int>& v, const Int& s) {
            (void)v;
            out[0][to_long(s)] += 2;
        });
        out[0][0] += 1;
        return out;
    }

    long outer_max = (long)std::ceil(std::sqrt((double)bound / c.at(n - 1, n - 1))) + 1;
    long chunk = (outer_max + parts - 1) / parts;
    for (int t = 0; t < parts; ++t) {
        long lo = 1 + (long)t * chunk;
        long hi = std::min(outer_max, lo + chunk - 1);
        hist_int64(A, bound, out[t], lo, hi, t == 0);
    }
    out[0][0] += 1;
    return out;
}

void enumerate_vectors(const MatZ& A, const Int& bound,
                       const std::function<void(const std::vector<Int>&, const Int&)>& fn)
{
    enumerate_generic(A, bound, fn);
}

Int shortest_vector(const MatZ& A, std::vector<Int>* vec)
{
    // grow the search radius until a nonzero vector appears; a basis vector
    // norm always works as a starting bound
    Int bound = A(0, 0) / 2;
    for (long i = 1; i < A.m; ++i) {
        Int c = A(i, i) / 2;
        if (c < bound) bound = c;
    }
    if (bound < 1) bound = 1;
    while (true) {
        Int best = -1;
        std::vector<Int> bv;
        enumerate_generic(A, bound, [&](const std::vector<Int>& v, const Int& s) {
            if (best < 0 || s < best) {
                best = s;
                bv = v;
            }
        });
        if (best >= 0) {
            if (vec) *vec = bv;
            return best;
        }
        bound *= 2;
    }
}

bool has_vector_of_norm(const MatZ& A, const Int& target)
{
    if (target == 0) return true;
    bool found = false;
    // enumerate_generic has no early exit; use an exception to cut the search
    struct done {};
    try {
        enumerate_generic(A, target, [&](const std::vector<Int>&, const Int& s) {
            if (s == target) {
                found = true;
                throw done{};
            }
        });
    } catch (const done&) {
    }
    return found;
}

} // namespace qp
