#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sinklab/matrix.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

// Parameters (k, ell, n, x, z) with derived y = (x+z)/2 and
// w = (1 - k(x+z))/(n - 2k). Valid when n > max(2k, 2ell),
// 0 < x+z < 1/k and x+z != 2/n; positivity of y and w follows.
struct FamilyParams {
    long k = 0;
    long ell = 0;
    long n = 0;
    Rational x;
    Rational z;
    Rational y;
    Rational w;
};

// Rejections carry the violated constraint by name: DimensionTooSmall,
// SumOutOfRange, or DegenerateSum. The degenerate sum x+z = 2/n forces
// y = w = 1/n (a column stochastic construction); allow_degenerate_sum
// bypasses that one rejection so tests can confirm the zero-step outcome.
FamilyParams validate_params(long k, long ell, long n, const Rational& x, const Rational& z,
                             bool allow_degenerate_sum = false);

// The n x n row stochastic matrix with rows
//   (x ... x, w ... w, z ... z)   for the first ell rows,
//   (y ... y, w ... w, y ... y)   for the middle band,
//   (z ... z, w ... w, x ... x)   for the last ell rows,
// with k outer entries on each side and n-2k middle entries.
Matrix<Rational> build_family_matrix(const FamilyParams& p);

struct OneStepReport {
    bool row_sums_one = false;
    bool col_sums_two_level = false;  // outer sums ny, inner sums nw, both != 1
    bool col_scaled_doubly_stochastic = false;
    bool scaling_count_one = false;
    Rational outer_col_sum;  // ny
    Rational inner_col_sum;  // nw
    std::optional<std::size_t> count;

    bool all_pass() const {
        return row_sums_one && col_sums_two_level && col_scaled_doubly_stochastic &&
               scaling_count_one;
    }
};

// Exact checks of the one-column-scaling claim for one parameter tuple.
OneStepReport verify_one_step(const FamilyParams& p);

enum class DeterminantCase { duplicate_columns, duplicate_rows, formula_3x3 };

struct FamilyDeterminant {
    Rational det;
    DeterminantCase case_tag;
};

// Determinant of the family matrix plus the structural reason it is 0:
// two equal columns (k > 1 or n-2k > 1), two equal rows (ell > 1 or
// n-2ell > 1), or the 3x3 identity det = w(x-z)(x+z-2y). A nonzero
// determinant here is an internal invariant violation.
FamilyDeterminant family_determinant(const FamilyParams& p);

// Every valid tuple with k <= k_max, ell <= ell_max, n <= n_max and x, z
// proper fractions with denominator <= den_bound, deterministically
// ordered by (k, ell, n, x, z).
std::vector<FamilyParams> enumerate_valid_params(long k_max, long ell_max, long n_max,
                                                 long den_bound);

} // namespace sinklab
