#pragma once

#include <vector>

#include "sinklab/matrix.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

// Solves A x = rhs exactly over the rationals (fraction-free elimination
// with full pivoting). Throws SingularMatrix when no unique solution
// exists, NotSquare / DimensionMismatch on shape errors.
std::vector<Rational> solve_exact(const Matrix<Rational>& a, const std::vector<Rational>& rhs);

// Reference determinant by cofactor expansion along the first row.
// Exponential; an independent cross-check for small matrices.
Rational determinant_cofactor(const Matrix<Rational>& a);

} // namespace sinklab
