#pragma once

#include "qp/matrix.hpp"

#include <cstdint>
#include <functional>

namespace qp {

// Quadratic lattice carried by its Gram matrix; basis_change accumulates the
// unimodular transforms applied by reductions, so that
// current_gram = U * original_gram * U^T.
struct ZLattice {
    MatQ gram;
    MatZ basis_change;

    explicit ZLattice(MatQ g) : gram(std::move(g)), basis_change(MatZ::identity(gram.m)) {}
    ZLattice(MatQ g, MatZ u) : gram(std::move(g)), basis_change(std::move(u)) {}
    long dim() const { return gram.m; }
};

bool is_positive_definite(const MatQ& gram);

ZLattice lll_reduce(const ZLattice& l, const Rat& delta = Rat(3, 4));

// Doubled Gram matrix of an integer-valued quadratic form: A = 2*Gram is
// integral symmetric with even diagonal and Q(v) = v A v^T / 2.
MatZ doubled_gram(const MatQ& gram);

// Exact count of lattice vectors by norm: r[k] = #{v : Q(v) = k}, 0 <= k <=
// bound, counting v and -v separately; r[0] = 1. A is the doubled Gram.
std::vector<uint32_t> enumerate_by_norm(const MatZ& A, long bound);

// Same, split over disjoint ranges of the outermost enumeration coordinate;
// the per-part histograms sum exactly to the full histogram.
std::vector<std::vector<uint32_t>> enumerate_by_norm_partitioned(const MatZ& A, long bound,
                                                                 int parts);

// Per-vector callback over one representative of each +-v pair (zero vector
// excluded); norm = Q(v) <= bound.
void enumerate_vectors(const MatZ& A, const Int& bound,
                       const std::function<void(const std::vector<Int>&, const Int&)>& fn);

// Smallest nonzero value of Q and one vector attaining it.
Int shortest_vector(const MatZ& A, std::vector<Int>* vec = nullptr);

// True iff some vector has Q(v) = target (early-exit search).
bool has_vector_of_norm(const MatZ& A, const Int& target);

} // namespace qp
