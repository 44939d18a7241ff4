#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinklab/matrix.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

// All p/q in lowest terms with 0 < p < q <= max_den, ascending. Empty for
// max_den < 2.
std::vector<Rational> proper_fractions(long max_den);

// All length-n tuples of proper fractions with denominator <= bound that
// sum exactly to 1, in ascending lexicographic order.
std::vector<std::vector<Rational>> stochastic_rows(std::size_t n, long bound);

// Indexed enumeration of every positive row stochastic n x n matrix whose
// entries are proper fractions with denominator <= bound (lowest terms).
// Matrix `index` is read as an n-digit base-row_count() number, most
// significant digit first; digit r selects row r from the ordered row list.
// The stream is therefore lexicographic over rows and duplicate-free, and
// any contiguous index range is a well-defined shard.
class RowStochasticEnumeration {
public:
    // Throws BoundTooSmall when bound < n: no positive row of denominators
    // <= bound can sum to 1 with fewer than n as a denominator.
    RowStochasticEnumeration(std::size_t n, long bound);

    std::size_t n() const noexcept { return n_; }
    long bound() const noexcept { return bound_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    const std::vector<std::vector<Rational>>& row_tuples() const noexcept { return rows_; }

    Matrix<Rational> matrix_at(std::uint64_t index) const;

private:
    std::size_t n_ = 0;
    long bound_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::uint64_t total_ = 0;
};

} // namespace sinklab
