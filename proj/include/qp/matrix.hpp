#pragma once

#include "qp/poly.hpp"
#include "qp/rational.hpp"

#include <vector>

namespace qp {

template <class T>
struct Mat {
    long m = 0, n = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(long rows, long cols) : m(rows), n(cols), a(rows * cols) {}
    static Mat identity(long k)
    {
        Mat r(k, k);
        for (long i = 0; i < k; ++i) r(i, i) = T(1);
        return r;
    }
    T& operator()(long i, long j) { return a[i * n + j]; }
    const T& operator()(long i, long j) const { return a[i * n + j]; }
    bool operator==(const Mat& o) const { return m == o.m && n == o.n && a == o.a; }

    Mat transpose() const
    {
        Mat r(n, m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    std::vector<T> row(long i) const
    {
        return std::vector<T>(a.begin() + i * n, a.begin() + (i + 1) * n);
    }
};

using MatZ = Mat<Int>;
using MatQ = Mat<Rat>;

MatZ operator*(const MatZ& A, const MatZ& B);
MatQ operator*(const MatQ& A, const MatQ& B);
MatQ operator*(const MatQ& A, const Rat& c);
std::vector<Rat> operator*(const std::vector<Rat>& v, const MatQ& A);
std::vector<Int> operator*(const std::vector<Int>& v, const MatZ& A);

MatQ to_rational(const MatZ& A);
// Writes A = N/d with N integral and d>0 minimal.
void clear_denominators(const MatQ& A, MatZ& N, Int& d);

// Row Hermite normal form: U*A = H with U unimodular, H in row HNF
// (pivots positive, entries above a pivot reduced to [0, pivot), zero rows
// last, pivot columns strictly increasing).
void hermite_normal_form(const MatZ& A, MatZ& H, MatZ& U);
MatZ hnf(const MatZ& A);

// Basis (rows) of {x : x*A = 0}, saturated (primitive vectors).
MatZ left_kernel(const MatZ& A);

long rank(const MatQ& A);
Rat det(const MatQ& A);
Int det(const MatZ& A);
MatQ inverse(const MatQ& A); // throws domain_error if singular

// Solve x*A = b over Q; empty optional if inconsistent.
std::optional<std::vector<Rat>> solve_left(const MatQ& A, const std::vector<Rat>& b);

// Row span lattice of A intersected with Z^n, as a full HNF basis of the
// saturation of the row lattice.
MatZ saturate_rows(const MatZ& A);

// Characteristic polynomial, monic of degree n. Integer matrices use a
// modular CRT Hessenberg algorithm; rational input must have an integral
// characteristic polynomial (true for every matrix this artifact feeds in)
// or an internal_error is raised.
IntPoly char_poly(const MatZ& A);
IntPoly char_poly(const MatQ& A);

} // namespace qp
