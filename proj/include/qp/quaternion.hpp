#pragma once

#include "qp/lattice.hpp"
#include "qp/matrix.hpp"

#include <array>

namespace qp {

// Rational quaternion algebra (a,b | Q): i^2 = a, j^2 = b, k = ij = -ji.
struct QuaternionAlgebra {
    Int a, b;
    std::vector<Int> ramified_primes; // finite ramified places, sorted
    bool definite = false;

    Int disc() const
    {
        Int d = 1;
        for (auto& p : ramified_primes) d *= p;
        return d;
    }
    bool operator==(const QuaternionAlgebra& o) const { return a == o.a && b == o.b; }
};

using QuatCoords = std::array<Rat, 4>; // (t, x, y, z) over 1, i, j, k

QuatCoords quat_mul(const QuaternionAlgebra& A, const QuatCoords& u, const QuatCoords& v);
QuatCoords quat_conj(const QuatCoords& u);
Rat quat_trace(const QuatCoords& u);
Rat quat_norm(const QuaternionAlgebra& A, const QuatCoords& u);

// +1 iff x^2 = a y^2 + b z^2 has a nontrivial solution over Q_p (p = 0 means
// the real place).
int hilbert_symbol(const Int& a, const Int& b, const Int& p);

std::vector<Int> ramified_places(const Int& a, const Int& b); // finite places

// Definite algebra of odd square-free discriminant d with an odd number of
// prime factors; construction certified through hilbert_symbol.
QuaternionAlgebra algebra_of_discriminant(const Int& d);

QuaternionAlgebra make_algebra(const Int& a, const Int& b);

// Full lattice in the algebra, rows = basis coordinates, held in HNF-reduced
// canonical form.
struct QuatLattice {
    MatQ basis; // 4x4, full rank

    QuatLattice() : basis(MatQ::identity(4)) {}
    explicit QuatLattice(MatQ b);
    bool contains(const QuatCoords& v) const;
    bool operator==(const QuatLattice& o) const { return basis.a == o.basis.a; }
    QuatCoords row(long i) const
    {
        return {basis(i, 0), basis(i, 1), basis(i, 2), basis(i, 3)};
    }
};

// canonical HNF basis from a stack of generator rows
MatQ lattice_from_rows(const MatQ& rows);
QuatLattice lattice_mul(const QuaternionAlgebra& A, const QuatLattice& L, const QuatLattice& R);
QuatLattice lattice_conj(const QuatLattice& L);
QuatLattice lattice_scale(const QuatLattice& L, const Rat& c);
// {x : x L ⊆ L} and {x : L x ⊆ L}
QuatLattice left_multiplier_ring(const QuaternionAlgebra& A, const QuatLattice& L);
QuatLattice right_multiplier_ring(const QuaternionAlgebra& A, const QuatLattice& L);

// doubled Gram of the norm form Tr(x * conj(y)) on a lattice basis
MatZ norm_gram2(const QuaternionAlgebra& A, const QuatLattice& L);

struct QuaternionOrder {
    QuaternionAlgebra algebra;
    QuatLattice lattice;
    Int level = 1;
    Int reduced_discriminant = 0;

    const MatQ& basis() const { return lattice.basis; }
};

// checks ring axioms: contains 1, closed under multiplication
bool is_order(const QuaternionAlgebra& A, const QuatLattice& L);

Int reduced_discriminant_of(const QuaternionAlgebra& A, const QuatLattice& L);

QuaternionOrder make_order(const QuaternionAlgebra& A, const QuatLattice& L);
QuaternionOrder order_from_basis(const QuaternionAlgebra& A, const MatQ& rows);

// Maximal order containing Z<1,i,j,k>, by p-saturation at every prime where
// the discriminant exceeds disc(A).
QuaternionOrder maximal_order(const QuaternionAlgebra& A);

// Eichler order of square-free level M inside a maximal order.
QuaternionOrder eichler_order(const QuaternionOrder& maximal, const Int& M);

// Splitting O_p ≅ M_2(Z_p) at p ∤ disc(D), to precision p^k. For p | level
// the images of the order are upper triangular mod p.
struct LocalSplitting {
    Int p;
    long k = 1;
    Int pk;                      // p^k
    std::array<std::array<Int, 4>, 4> images; // images[r] = 2x2 matrix (m00,m01,m10,m11) of basis r
    MatZ from_matrix;            // 4x4: matrix coords (m00,m01,m10,m11) -> order coords, mod p^k

    // image of an order element given by integer coordinates
    std::array<Int, 4> image(const std::vector<Int>& coords) const;
    std::vector<Int> preimage(const std::array<Int, 4>& m) const; // order coords mod p^k
};

LocalSplitting local_splitting(const QuaternionOrder& O, const Int& p, long k);

// radical of O/pO lifted to a lattice J with pO ⊆ J; at p | disc(O) this is
// the unique two-sided ideal of reduced norm p
QuatLattice radical_ideal(const QuaternionOrder& O, const Int& p);

} // namespace qp
