#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <utility>
#include <vector>

#include "sinklab/errors.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

// The two scalar backends. Exactness-critical paths (finite termination,
// determinant-zero facts, pullback) are only meaningful over Rational;
// mixing kinds within one matrix is a type error by construction.
template <class T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

template <class T>
inline constexpr bool is_exact_scalar_v = std::is_same_v<T, Rational>;

enum class ScalarKind { rational, floating };

template <Scalar T>
constexpr ScalarKind scalar_kind() {
    return is_exact_scalar_v<T> ? ScalarKind::rational : ScalarKind::floating;
}

inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return abs(x); }

// Dense row-major matrix. Immutable by convention once built: the free
// operations below are pure and return fresh values, so matrices can be
// shared across threads freely.
template <Scalar T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        if (rows_ == 0) throw InvalidArgument("matrix dimensions must be positive");
        cols_ = init.begin()->size();
        if (cols_ == 0) throw InvalidArgument("matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer rows");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool square() const noexcept { return rows_ == cols_ && rows_ > 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& entries() const noexcept { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_positive() const {
        for (const T& x : data_)
            if (!(x > T(0))) return false;
        return !data_.empty();
    }

    bool is_nonnegative() const {
        for (const T& x : data_)
            if (x < T(0)) return false;
        return !data_.empty();
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

enum class Side { left, right };

// diag(values), applied on the left (row scaling) or right (column
// scaling). Constructors in this header produce strictly positive values.
template <Scalar T>
struct DiagonalScaling {
    std::vector<T> values;
    Side side = Side::left;

    bool is_identity() const {
        for (const T& v : values)
            if (v != T(1)) return false;
        return true;
    }

    // Float-mode identity check; exact mode passes tolerance 0.
    bool is_identity_within(const T& tolerance) const {
        for (const T& v : values)
            if (abs_value(v - T(1)) > tolerance) return false;
        return true;
    }
};

// Deviations are exact in rational mode, so the stochasticity flags are
// exact verdicts there. Flags require nonnegativity as well as unit sums.
template <Scalar T>
struct StochasticityReport {
    bool nonnegative = false;
    bool row_stochastic = false;
    bool col_stochastic = false;
    T max_row_deviation = T(0);
    T max_col_deviation = T(0);

    bool doubly_stochastic() const { return row_stochastic && col_stochastic; }
};

template <Scalar T>
std::vector<T> row_sums(const Matrix<T>& a) {
    if (a.empty()) throw InvalidArgument("row_sums of empty matrix");
    std::vector<T> sums(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) sums[i] += a(i, j);
    return sums;
}

template <Scalar T>
std::vector<T> col_sums(const Matrix<T>& a) {
    if (a.empty()) throw InvalidArgument("col_sums of empty matrix");
    std::vector<T> sums(a.cols(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) sums[j] += a(i, j);
    return sums;
}

// diag(1/rowsum_i); requires every row sum positive.
template <Scalar T>
DiagonalScaling<T> row_scaling_matrix(const Matrix<T>& a) {
    std::vector<T> sums = row_sums(a);
    DiagonalScaling<T> d{{}, Side::left};
    d.values.reserve(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (!(sums[i] > T(0))) throw ZeroRowSum(i);
        d.values.push_back(T(1) / sums[i]);
    }
    return d;
}

// diag(1/colsum_j); requires every column sum positive.
template <Scalar T>
DiagonalScaling<T> col_scaling_matrix(const Matrix<T>& a) {
    std::vector<T> sums = col_sums(a);
    DiagonalScaling<T> d{{}, Side::right};
    d.values.reserve(sums.size());
    for (std::size_t j = 0; j < sums.size(); ++j) {
        if (!(sums[j] > T(0))) throw ZeroColSum(j);
        d.values.push_back(T(1) / sums[j]);
    }
    return d;
}

template <Scalar T>
Matrix<T> apply_scaling(const Matrix<T>& a, const DiagonalScaling<T>& d) {
    const std::size_t expect = d.side == Side::left ? a.rows() : a.cols();
    if (d.values.size() != expect)
        throw DimensionMismatch("diagonal length does not match matrix dimension");
    Matrix<T> out = a;
    if (d.side == Side::left) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = d.values[i] * a(i, j);
    } else {
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * d.values[j];
    }
    return out;
}

template <Scalar T>
StochasticityReport<T> stochasticity(const Matrix<T>& a, const T& tolerance = T(0)) {
    if (tolerance < T(0)) throw InvalidArgument("tolerance must be nonnegative");
    if constexpr (is_exact_scalar_v<T>) {
        if (!tolerance.is_zero()) throw NonzeroToleranceInExactMode();
    }
    StochasticityReport<T> report;
    report.nonnegative = a.is_nonnegative();
    for (const T& s : row_sums(a)) {
        T dev = abs_value(s - T(1));
        if (dev > report.max_row_deviation) report.max_row_deviation = dev;
    }
    for (const T& s : col_sums(a)) {
        T dev = abs_value(s - T(1));
        if (dev > report.max_col_deviation) report.max_col_deviation = dev;
    }
    report.row_stochastic = report.nonnegative && report.max_row_deviation <= tolerance;
    report.col_stochastic = report.nonnegative && report.max_col_deviation <= tolerance;
    return report;
}

// Exact determinant over Rational (fraction-free elimination) and
// partially pivoted elimination over double. Definitions in linalg.cpp.
Rational determinant(const Matrix<Rational>& a);
double determinant(const Matrix<double>& a);

} // namespace sinklab
