#include "sinklab/family.hpp"

#include <algorithm>

#include "sinklab/enumerate.hpp"
#include "sinklab/errors.hpp"
#include "sinklab/linalg.hpp"
#include "sinklab/sinkhorn.hpp"

namespace sinklab {

FamilyParams validate_params(long k, long ell, long n, const Rational& x, const Rational& z,
                             bool allow_degenerate_sum) {
    if (k < 1 || ell < 1 || n < 1) {
        throw InvalidArgument("family parameters k, ell, n must be positive");
    }
    if (x.sign() <= 0 || z.sign() <= 0) {
        throw InvalidArgument("family parameters x, z must be positive");
    }
    if (n <= std::max(2 * k, 2 * ell)) {
        throw DimensionTooSmall("n = " + std::to_string(n) + " must exceed max(2k, 2ell) = " +
                                std::to_string(std::max(2 * k, 2 * ell)));
    }
    const Rational sum = x + z;
    if (sum >= Rational(1, k)) {
        throw SumOutOfRange("x + z = " + sum.str() + " must lie strictly between 0 and 1/k = " +
                            Rational(1, k).str());
    }
    if (!allow_degenerate_sum && sum == Rational(2, n)) {
        throw DegenerateSum("x + z = 2/n makes every row and column sum 1 already");
    }

    FamilyParams p;
    p.k = k;
    p.ell = ell;
    p.n = n;
    p.x = x;
    p.z = z;
    p.y = sum / Rational(2);
    p.w = (Rational(1) - Rational(k) * sum) / Rational(n - 2 * k);
    if (p.y.sign() <= 0 || p.w.sign() <= 0) {
        throw InternalError("derived family values y, w must be positive");
    }
    return p;
}

Matrix<Rational> build_family_matrix(const FamilyParams& p) {
    const std::size_t n = static_cast<std::size_t>(p.n);
    const std::size_t k = static_cast<std::size_t>(p.k);
    const std::size_t ell = static_cast<std::size_t>(p.ell);
    Matrix<Rational> a(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& left = i < ell ? p.x : (i < n - ell ? p.y : p.z);
        const Rational& right = i < ell ? p.z : (i < n - ell ? p.y : p.x);
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = j < k ? left : (j < n - k ? p.w : right);
        }
    }
    return a;
}

OneStepReport verify_one_step(const FamilyParams& p) {
    const Matrix<Rational> a = build_family_matrix(p);
    const std::size_t n = a.rows();
    const std::size_t k = static_cast<std::size_t>(p.k);

    OneStepReport report;
    report.outer_col_sum = Rational(p.n) * p.y;
    report.inner_col_sum = Rational(p.n) * p.w;

    const std::vector<Rational> rows = row_sums(a);
    report.row_sums_one =
        std::all_of(rows.begin(), rows.end(), [](const Rational& s) { return s.is_one(); });

    const std::vector<Rational> cols = col_sums(a);
    bool two_level = !report.outer_col_sum.is_one() && !report.inner_col_sum.is_one();
    for (std::size_t j = 0; j < n && two_level; ++j) {
        const Rational& expected =
            (j < k || j >= n - k) ? report.outer_col_sum : report.inner_col_sum;
        two_level = cols[j] == expected;
    }
    report.col_sums_two_level = two_level;

    const Matrix<Rational> scaled = apply_scaling(a, col_scaling_matrix(a));
    report.col_scaled_doubly_stochastic = stochasticity(scaled).doubly_stochastic();

    report.count = scaling_count(a, 4);
    report.scaling_count_one = report.count.has_value() && *report.count == 1;
    return report;
}

FamilyDeterminant family_determinant(const FamilyParams& p) {
    const Matrix<Rational> a = build_family_matrix(p);
    FamilyDeterminant result;
    result.det = determinant(a);

    if (p.k > 1 || p.n - 2 * p.k > 1) {
        result.case_tag = DeterminantCase::duplicate_columns;
        const std::size_t j0 = p.k > 1 ? 0 : static_cast<std::size_t>(p.k);
        const std::size_t j1 = j0 + 1;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (a(i, j0) != a(i, j1)) {
                throw InternalError("family matrix lost its duplicate columns");
            }
        }
    } else if (p.ell > 1 || p.n - 2 * p.ell > 1) {
        result.case_tag = DeterminantCase::duplicate_rows;
        const std::size_t i0 = p.ell > 1 ? 0 : static_cast<std::size_t>(p.ell);
        const std::size_t i1 = i0 + 1;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i0, j) != a(i1, j)) {
                throw InternalError("family matrix lost its duplicate rows");
            }
        }
    } else {
        // k = ell = 1 with n - 2k = n - 2ell = 1 forces n = 3.
        result.case_tag = DeterminantCase::formula_3x3;
        const Rational formula = p.w * (p.x - p.z) * (p.x + p.z - Rational(2) * p.y);
        if (result.det != formula) {
            throw InternalError("3x3 family determinant disagrees with w(x-z)(x+z-2y)");
        }
    }

    if (!result.det.is_zero()) {
        throw InternalError("family determinant must vanish");
    }
    return result;
}

std::vector<FamilyParams> enumerate_valid_params(long k_max, long ell_max, long n_max,
                                                 long den_bound) {
    const std::vector<Rational> fractions = proper_fractions(den_bound);
    std::vector<FamilyParams> out;
    for (long k = 1; k <= k_max; ++k) {
        for (long ell = 1; ell <= ell_max; ++ell) {
            for (long n = std::max(2 * k, 2 * ell) + 1; n <= n_max; ++n) {
                for (const Rational& x : fractions) {
                    for (const Rational& z : fractions) {
                        const Rational sum = x + z;
                        if (sum >= Rational(1, k) || sum == Rational(2, n)) {
                            continue;
                        }
                        out.push_back(validate_params(k, ell, n, x, z));
                    }
                }
            }
        }
    }
    return out;
}

} // namespace sinklab
