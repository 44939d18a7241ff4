#include "sinklab/enumerate.hpp"

#include <algorithm>
#include <numeric>

#include "sinklab/errors.hpp"

namespace sinklab {

std::vector<Rational> proper_fractions(long max_den) {
    std::vector<Rational> out;
    for (long q = 2; q <= max_den; ++q) {
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Depth-first extension of a partial row. `remaining` is 1 minus the sum of
// the chosen prefix; `slots` is how many entries are still open. Fractions
// are ascending, so output rows come out in lexicographic order.
void extend_row(const std::vector<Rational>& fractions, long bound, std::size_t slots,
                const Rational& remaining, std::vector<Rational>& prefix,
                std::vector<std::vector<Rational>>& out) {
    if (slots == 1) {
        if (remaining > Rational(0) && remaining < Rational(1) &&
            remaining.den() <= static_cast<unsigned long>(bound)) {
            prefix.push_back(remaining);
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    const Rational lo = fractions.front() * Rational(static_cast<long>(slots) - 1);
    const Rational hi = fractions.back() * Rational(static_cast<long>(slots) - 1);
    for (const Rational& f : fractions) {
        const Rational rest = remaining - f;
        if (rest < lo) break;  // every later f only overshoots further
        if (rest > hi) continue;
        prefix.push_back(f);
        extend_row(fractions, bound, slots - 1, rest, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<std::vector<Rational>> stochastic_rows(std::size_t n, long bound) {
    if (n < 2) throw InvalidArgument("row length must be at least 2");
    if (bound < 2) throw InvalidArgument("denominator bound must be at least 2");
    if (bound < static_cast<long>(n)) {
        throw BoundTooSmall("no positive row with denominators <= " + std::to_string(bound) +
                            " sums to 1 in " + std::to_string(n) + " entries");
    }
    const std::vector<Rational> fractions = proper_fractions(bound);
    std::vector<std::vector<Rational>> out;
    std::vector<Rational> prefix;
    prefix.reserve(n);
    extend_row(fractions, bound, n, Rational(1), prefix, out);
    return out;
}

RowStochasticEnumeration::RowStochasticEnumeration(std::size_t n, long bound)
    : n_(n), bound_(bound), rows_(stochastic_rows(n, bound)) {
    total_ = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        if (total_ > UINT64_MAX / rows_.size()) {
            throw InvalidArgument("enumeration size overflows a 64-bit index");
        }
        total_ *= rows_.size();
    }
}

Matrix<Rational> RowStochasticEnumeration::matrix_at(std::uint64_t index) const {
    if (index >= total_) throw InvalidArgument("enumeration index out of range");
    Matrix<Rational> m(n_, n_, Rational(0));
    for (std::size_t r = n_; r-- > 0;) {
        const std::vector<Rational>& row = rows_[index % rows_.size()];
        index /= rows_.size();
        for (std::size_t j = 0; j < n_; ++j) m(r, j) = row[j];
    }
    return m;
}

} // namespace sinklab
