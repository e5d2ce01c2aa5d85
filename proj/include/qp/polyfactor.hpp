#pragma once

#include "qp/poly.hpp"

namespace qp {

// Factorization over Z up to sign: product of factor^multiplicity equals
// +-primitive_part(f) (and the content is dropped). Factors are primitive
// with positive leading coefficient, ordered by degree then coefficients.
std::vector<std::pair<IntPoly, int>> factor_int_poly(const IntPoly& f);

bool is_irreducible(const IntPoly& f);

} // namespace qp
