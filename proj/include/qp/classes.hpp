#pragma once

#include "qp/quaternion.hpp"

#include <map>

namespace qp {

struct RightIdeal {
    QuatLattice lattice;
    Rat norm; // reduced norm
};

struct ClassSet {
    QuaternionOrder order;
    std::vector<RightIdeal> reps; // reps[0] is the trivial ideal
    std::vector<Int> weights;     // w_i = |unit group of the left order| / 2
    std::vector<QuaternionOrder> left_orders;
    std::vector<int> type_map;    // class index -> type index, type of reps[0] is 0
    std::map<Int, std::vector<int>> al_perms; // p | disc(O) -> involution on classes
    Rat mass;

    long h() const { return (long)reps.size(); }
    long t() const
    {
        int mx = -1;
        for (int t : type_map) mx = std::max(mx, t);
        return mx + 1;
    }
};

Rat mass_formula(const QuaternionOrder& O);

Rat ideal_norm(const QuaternionOrder& O, const QuatLattice& L);
RightIdeal trivial_ideal(const QuaternionOrder& O);

// number of unit-norm vectors divided by 2
Int unit_weight(const QuaternionAlgebra& A, const QuatLattice& order_lattice);

// q+1 right ideals J ⊂ I with I/J of order q^2, q coprime to disc(O)
std::vector<RightIdeal> p_neighbors(const QuaternionOrder& O, const RightIdeal& I, const Int& q);

bool is_equivalent(const QuaternionOrder& O, const RightIdeal& I, const RightIdeal& J);

// equivalent ideal of small norm
RightIdeal reduce_ideal(const QuaternionOrder& O, const RightIdeal& I);

// doubled Gram of the ternary lattice {v in Z + 2*L : Tr v = 0} (L an order),
// LLL-reduced; this is the theta lattice attached to a left order
MatZ gross_gram2(const QuaternionAlgebra& A, const QuatLattice& order_lattice);

ClassSet enumerate_classes(const QuaternionOrder& O);

// permutation induced by multiplication with the two-sided ideal of norm p
std::vector<int> atkin_lehner_perm(const ClassSet& cs, const Int& p);

// type partition recomputed independently through norm-form isometries of the
// left orders (1 fixed); must agree with the Atkin-Lehner orbits
std::vector<int> type_partition(const ClassSet& cs);

bool orders_isomorphic(const QuaternionAlgebra& A, const QuatLattice& O1, const QuatLattice& O2);

} // namespace qp
