#include "sinklab/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sinklab/errors.hpp"

namespace sinklab {

namespace {

// Clears denominators row by row: row i of the result is row i of `a`
// times the lcm of its denominators. Returns the per-row factors.
std::vector<mpz_class> integerize_rows(const Matrix<Rational>& a,
                                       std::vector<std::vector<mpz_class>>& out) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<mpz_class> factors(rows, 1);
    out.assign(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).den().get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) {
            mpz_class q = l / a(i, j).den();
            out[i][j] = a(i, j).num() * q;
        }
        factors[i] = std::move(l);
    }
    return factors;
}

// One step of Bareiss elimination on an integer matrix; divisions are
// exact by construction.
void bareiss_eliminate(std::vector<std::vector<mpz_class>>& m, std::size_t k,
                       std::size_t col_end, const mpz_class& prev) {
    const std::size_t n = m.size();
    const mpz_class& pivot = m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < col_end; ++j) {
            mpz_class t = m[i][j] * pivot - m[i][k] * m[k][j];
            mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
        m[i][k] = 0;
    }
}

} // namespace

Rational determinant(const Matrix<Rational>& a) {
    if (!a.square()) throw NotSquare("determinant requires a square matrix");
    const std::size_t n = a.rows();

    std::vector<std::vector<mpz_class>> m;
    std::vector<mpz_class> factors = integerize_rows(a, m);

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        // Pivot on the largest magnitude entry in the column.
        std::size_t pivot_row = k;
        mpz_class best = ::abs(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            mpz_class cand = ::abs(m[i][k]);
            if (cand > best) {
                best = cand;
                pivot_row = i;
            }
        }
        if (best == 0) return Rational(0);
        if (pivot_row != k) {
            std::swap(m[pivot_row], m[k]);
            sign = -sign;
        }
        bareiss_eliminate(m, k, n, prev);
        prev = m[k][k];
    }

    mpz_class det_int = m[n - 1][n - 1];
    if (sign < 0) det_int = -det_int;
    mpz_class scale = 1;
    for (const mpz_class& f : factors) scale *= f;
    return Rational(std::move(det_int), std::move(scale));
}

double determinant(const Matrix<double>& a) {
    if (!a.square()) throw NotSquare("determinant requires a square matrix");
    const std::size_t n = a.rows();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);

    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double best = std::fabs(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::fabs(m[i][k]) > best) {
                best = std::fabs(m[i][k]);
                pivot_row = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot_row != k) {
            std::swap(m[pivot_row], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double factor = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
        }
    }
    return det;
}

std::vector<Rational> solve_exact(const Matrix<Rational>& a, const std::vector<Rational>& rhs) {
    if (!a.square()) throw NotSquare("solve_exact requires a square matrix");
    const std::size_t n = a.rows();
    if (rhs.size() != n) throw DimensionMismatch("right-hand side length does not match matrix");

    // Augmented system [A | rhs], denominators cleared per row.
    Matrix<Rational> aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = rhs[i];
    }
    std::vector<std::vector<mpz_class>> m;
    integerize_rows(aug, m);

    // Column permutation tracks variable order under full pivoting.
    std::vector<std::size_t> var(n);
    for (std::size_t j = 0; j < n; ++j) var[j] = j;

    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pr = k, pc = k;
        mpz_class best = 0;
        for (std::size_t i = k; i < n; ++i) {
            for (std::size_t j = k; j < n; ++j) {
                mpz_class cand = ::abs(m[i][j]);
                if (cand > best) {
                    best = cand;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (best == 0) throw SingularMatrix("matrix is singular; no unique solution");
        if (pr != k) std::swap(m[pr], m[k]);
        if (pc != k) {
            for (std::size_t i = 0; i < n; ++i) std::swap(m[i][pc], m[i][k]);
            std::swap(var[pc], var[k]);
        }
        bareiss_eliminate(m, k, n + 1, prev);
        prev = m[k][k];
    }
    if (m[n - 1][n - 1] == 0) throw SingularMatrix("matrix is singular; no unique solution");

    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational sum(std::move(m[ii][n]), mpz_class(1));
        for (std::size_t j = ii + 1; j < n; ++j)
            sum -= Rational(m[ii][j], mpz_class(1)) * x[var[j]];
        x[var[ii]] = sum / Rational(m[ii][ii], mpz_class(1));
    }
    return x;
}

namespace {

Rational cofactor_expand(const Matrix<Rational>& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Rational det(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j).is_zero()) continue;
        Matrix<Rational> minor(n - 1, n - 1, Rational(0));
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t col = 0;
            for (std::size_t jj = 0; jj < n; ++jj) {
                if (jj == j) continue;
                minor(i - 1, col++) = a(i, jj);
            }
        }
        const Rational term = a(0, j) * cofactor_expand(minor);
        det = j % 2 == 0 ? det + term : det - term;
    }
    return det;
}

} // namespace

Rational determinant_cofactor(const Matrix<Rational>& a) {
    if (!a.square()) throw NotSquare("determinant requires a square matrix");
    return cofactor_expand(a);
}

} // namespace sinklab
