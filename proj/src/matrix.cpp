#include "qp/matrix.hpp"

#include <algorithm>

namespace qp {

MatZ operator*(const MatZ& A, const MatZ& B)
{
    if (A.n != B.m) throw internal_error("matrix size mismatch");
    MatZ C(A.m, B.n);
    for (long i = 0; i < A.m; ++i)
        for (long k = 0; k < A.n; ++k) {
            const Int& x = A(i, k);
            if (x == 0) continue;
            for (long j = 0; j < B.n; ++j) C(i, j) += x * B(k, j);
        }
    return C;
}

MatQ operator*(const MatQ& A, const MatQ& B)
{
    if (A.n != B.m) throw internal_error("matrix size mismatch");
    MatQ C(A.m, B.n);
    for (long i = 0; i < A.m; ++i)
        for (long k = 0; k < A.n; ++k) {
            const Rat& x = A(i, k);
            if (x == 0) continue;
            for (long j = 0; j < B.n; ++j) C(i, j) += x * B(k, j);
        }
    return C;
}

std::vector<Rat> operator*(const std::vector<Rat>& v, const MatQ& A)
{
    if ((long)v.size() != A.m) throw internal_error("vector*matrix size mismatch");
    std::vector<Rat> r(A.n, Rat(0));
    for (long i = 0; i < A.m; ++i) {
        if (v[i] == 0) continue;
        for (long j = 0; j < A.n; ++j) r[j] += v[i] * A(i, j);
    }
    return r;
}

std::vector<Int> operator*(const std::vector<Int>& v, const MatZ& A)
{
    if ((long)v.size() != A.m) throw internal_error("vector*matrix size mismatch");
    std::vector<Int> r(A.n, Int(0));
    for (long i = 0; i < A.m; ++i) {
        if (v[i] == 0) continue;
        for (long j = 0; j < A.n; ++j) r[j] += v[i] * A(i, j);
    }
    return r;
}

MatQ operator*(const MatQ& A, const Rat& c)
{
    MatQ B = A;
    for (auto& x : B.a) x *= c;
    return B;
}

MatQ to_rational(const MatZ& A)
{
    MatQ B(A.m, A.n);
    for (long i = 0; i < A.m * A.n; ++i) B.a[i] = Rat(A.a[i]);
    return B;
}

void clear_denominators(const MatQ& A, MatZ& N, Int& d)
{
    d = 1;
    for (auto& x : A.a) d = lcm(d, x.get_den());
    N = MatZ(A.m, A.n);
    for (long i = 0; i < A.m * A.n; ++i) {
        Rat v = A.a[i] * Rat(d);
        N.a[i] = v.get_num();
    }
}

void hermite_normal_form(const MatZ& A, MatZ& H, MatZ& U)
{
    H = A;
    U = MatZ::identity(A.m);
    long pr = 0; // next pivot row
    for (long col = 0; col < H.n && pr < H.m; ++col) {
        // clear column below pr with extended gcd row operations
        for (long i = pr + 1; i < H.m; ++i) {
            if (H(i, col) == 0) continue;
            if (H(pr, col) == 0) {
                for (long j = 0; j < H.n; ++j) std::swap(H(pr, j), H(i, j));
                for (long j = 0; j < U.n; ++j) std::swap(U(pr, j), U(i, j));
                continue;
            }
            Int g, u, v;
            xgcd(H(pr, col), H(i, col), g, u, v);
            Int p = divexact(H(pr, col), g), q = divexact(H(i, col), g);
            for (long j = 0; j < H.n; ++j) {
                Int t = u * H(pr, j) + v * H(i, j);
                H(i, j) = p * H(i, j) - q * H(pr, j);
                H(pr, j) = t;
            }
            for (long j = 0; j < U.n; ++j) {
                Int t = u * U(pr, j) + v * U(i, j);
                U(i, j) = p * U(i, j) - q * U(pr, j);
                U(pr, j) = t;
            }
        }
        if (H(pr, col) == 0) continue;
        if (H(pr, col) < 0) {
            for (long j = 0; j < H.n; ++j) H(pr, j) = -H(pr, j);
            for (long j = 0; j < U.n; ++j) U(pr, j) = -U(pr, j);
        }
        // reduce entries above the pivot
        for (long i = 0; i < pr; ++i) {
            if (H(i, col) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(pr, col).get_mpz_t());
            if (q == 0) continue;
            for (long j = 0; j < H.n; ++j) H(i, j) -= q * H(pr, j);
            for (long j = 0; j < U.n; ++j) U(i, j) -= q * U(pr, j);
        }
        ++pr;
    }
}

MatZ hnf(const MatZ& A)
{
    MatZ H, U;
    hermite_normal_form(A, H, U);
    return H;
}

MatZ left_kernel(const MatZ& A)
{
    MatZ H, U;
    hermite_normal_form(A, H, U);
    long r = 0;
    for (long i = 0; i < H.m; ++i) {
        bool zero = true;
        for (long j = 0; j < H.n; ++j)
            if (H(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) ++r;
    }
    MatZ K(A.m - r, A.m);
    for (long i = r; i < A.m; ++i)
        for (long j = 0; j < A.m; ++j) K(i - r, j) = U(i, j);
    return K;
}

namespace {

// Gaussian elimination returning (row echelon matrix, rank, det of the
// leading square part if square).
long rref_inplace(MatQ& M, Rat* detp = nullptr)
{
    long r = 0;
    Rat d(1);
    for (long col = 0; col < M.n && r < M.m; ++col) {
        long piv = -1;
        for (long i = r; i < M.m; ++i)
            if (M(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            d = 0;
            continue;
        }
        if (piv != r) {
            for (long j = 0; j < M.n; ++j) std::swap(M(piv, j), M(r, j));
            d = -d;
        }
        d *= M(r, col);
        Rat inv = 1 / M(r, col);
        for (long j = col; j < M.n; ++j) M(r, j) *= inv;
        for (long i = 0; i < M.m; ++i) {
            if (i == r || M(i, col) == 0) continue;
            Rat f = M(i, col);
            for (long j = col; j < M.n; ++j) M(i, j) -= f * M(r, j);
        }
        ++r;
    }
    if (detp) *detp = (r == std::min(M.m, M.n)) ? d : Rat(0);
    return r;
}

} // namespace

long rank(const MatQ& A)
{
    MatQ M = A;
    return rref_inplace(M);
}

Rat det(const MatQ& A)
{
    if (A.m != A.n) throw internal_error("det of non-square matrix");
    MatQ M = A;
    Rat d;
    rref_inplace(M, &d);
    return d;
}

Int det(const MatZ& A)
{
    Rat d = det(to_rational(A));
    if (d.get_den() != 1) throw internal_error("integer det not integral");
    return d.get_num();
}

MatQ inverse(const MatQ& A)
{
    if (A.m != A.n) throw internal_error("inverse of non-square matrix");
    MatQ M(A.m, 2 * A.n);
    for (long i = 0; i < A.m; ++i) {
        for (long j = 0; j < A.n; ++j) M(i, j) = A(i, j);
        M(i, A.n + i) = 1;
    }
    long r = rref_inplace(M);
    if (r != A.m) throw domain_error("matrix not invertible");
    MatQ B(A.m, A.n);
    for (long i = 0; i < A.m; ++i)
        for (long j = 0; j < A.n; ++j) B(i, j) = M(i, A.n + j);
    return B;
}

std::optional<std::vector<Rat>> solve_left(const MatQ& A, const std::vector<Rat>& b)
{
    // x*A = b  <=>  A^T x^T = b^T
    MatQ M(A.n, A.m + 1);
    for (long i = 0; i < A.n; ++i) {
        for (long j = 0; j < A.m; ++j) M(i, j) = A(j, i);
        M(i, A.m) = b[i];
    }
    rref_inplace(M);
    std::vector<Rat> x(A.m, Rat(0));
    for (long i = 0; i < M.m; ++i) {
        long piv = -1;
        for (long j = 0; j < A.m; ++j)
            if (M(i, j) != 0) {
                piv = j;
                break;
            }
        if (piv < 0) {
            if (M(i, A.m) != 0) return std::nullopt;
            continue;
        }
        x[piv] = M(i, A.m);
    }
    return x;
}

MatZ saturate_rows(const MatZ& A)
{
    // saturation = (row span over Q) ∩ Z^n = orthogonal of the right kernel
    MatZ K = left_kernel(A.transpose()); // rows span {x : A x^T = 0}
    if (K.m == 0) return MatZ::identity(A.n);
    return left_kernel(K.transpose());
}

// ---- characteristic polynomial ----

namespace {

unsigned long next_prime_ul(unsigned long p)
{
    Int q;
    mpz_nextprime(q.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t());
    return q.get_ui();
}

// char poly of an n×n matrix over F_p by Hessenberg reduction
std::vector<unsigned long> charpoly_mod(std::vector<unsigned long> h, long n, unsigned long p)
{
    auto at = [&](long i, long j) -> unsigned long& { return h[i * n + j]; };
    auto mm = [&](unsigned long a, unsigned long b) {
        return (unsigned long)((unsigned __int128)a * b % p);
    };
    // reduce to upper Hessenberg
    for (long col = 0; col < n - 2; ++col) {
        long piv = -1;
        for (long i = col + 1; i < n; ++i)
            if (at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != col + 1) {
            for (long j = 0; j < n; ++j) std::swap(at(piv, j), at(col + 1, j));
            for (long i = 0; i < n; ++i) std::swap(at(i, piv), at(i, col + 1));
        }
        unsigned long inv = p_inv(at(col + 1, col), p);
        for (long i = col + 2; i < n; ++i) {
            if (at(i, col) == 0) continue;
            unsigned long f = mm(at(i, col), inv);
            for (long j = col; j < n; ++j)
                at(i, j) = (at(i, j) + p - mm(f, at(col + 1, j))) % p;
            for (long k = 0; k < n; ++k)
                at(k, col + 1) = (at(k, col + 1) + mm(f, at(k, i))) % p;
        }
    }
    // char polys of leading principal Hessenberg blocks
    std::vector<std::vector<unsigned long>> c(n + 1);
    c[0] = {1};
    for (long k = 1; k <= n; ++k) {
        c[k].assign(k + 1, 0);
        // c_k(x) = (x - h[k-1][k-1]) c_{k-1}(x) - sum_i h[i][k-1] * prod(subdiag) c_i(x)
        for (long i = 0; i < k; ++i) c[k][i + 1] = c[k - 1][i];
        unsigned long d = at(k - 1, k - 1);
        for (long i = 0; i < k; ++i) c[k][i] = (c[k][i] + p - mm(d, c[k - 1][i])) % p;
        unsigned long prod = 1;
        for (long i = k - 2; i >= 0; --i) {
            prod = mm(prod, at(i + 1, i));
            unsigned long f = mm(prod, at(i, k - 1));
            if (f == 0) continue;
            for (long j = 0; j <= i; ++j) c[k][j] = (c[k][j] + p - mm(f, c[i][j])) % p;
        }
    }
    return c[n];
}

} // namespace

IntPoly char_poly(const MatZ& A)
{
    if (A.m != A.n) throw internal_error("char_poly of non-square matrix");
    long n = A.m;
    if (n == 0) return IntPoly({Int(1)});
    // coefficient bound: |c_k| <= C(n,k) * ||A||_F^k <= (2*max(1,||A||_F))^n
    Rat fro(0);
    for (auto& x : A.a) fro += Rat(x * x);
    Int fr = isqrt(fro.get_num()) + 1;
    if (fr < 1) fr = 1;
    Int bound = 1;
    for (long i = 0; i < n; ++i) bound *= 2 * fr;
    bound *= 2; // sign slack

    Int modulus = 1;
    std::vector<Int> coeff(n + 1, Int(0));
    unsigned long p = 2000000000UL;
    while (modulus < bound) {
        p = next_prime_ul(p);
        std::vector<unsigned long> h(n * n);
        Int pp(static_cast<unsigned long>(p));
        for (long i = 0; i < n * n; ++i) h[i] = mod_floor(A.a[i], pp).get_ui();
        auto cp = charpoly_mod(std::move(h), n, p);
        Int g, u, v;
        xgcd(modulus, pp, g, u, v);
        Int newmod = modulus * pp;
        for (long k = 0; k <= n; ++k) {
            Int r1 = coeff[k];
            Int d = mod_floor((Int(cp[k]) - r1) * u, pp);
            Int x = r1 + modulus * d;
            x = mod_floor(x, newmod);
            if (2 * x > newmod) x -= newmod;
            coeff[k] = x;
        }
        modulus = newmod;
    }
    return IntPoly(std::move(coeff));
}

IntPoly char_poly(const MatQ& A)
{
    if (A.m != A.n) throw internal_error("char_poly of non-square matrix");
    MatZ N;
    Int d;
    clear_denominators(A, N, d);
    if (d == 1) return char_poly(N);
    // char_A(x) = d^-n char_N(d x): coefficient of x^k is cn[k] / d^(n-k)
    IntPoly cn = char_poly(N);
    long n = A.m;
    std::vector<Int> c(n + 1);
    Int den = 1;
    for (long k = n; k >= 0; --k) {
        Int num = cn.coeff(k);
        if (!divides(den, num)) throw internal_error("char_poly: non-integral result");
        c[k] = divexact(num, den);
        den *= d;
    }
    return IntPoly(std::move(c));
}

} // namespace qp
