#include "sinklab/pullback.hpp"

#include <algorithm>

#include "sinklab/errors.hpp"
#include "sinklab/linalg.hpp"

namespace sinklab {

Sign sign_of(const Rational& v) {
    const int s = v.sign();
    return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
}

namespace {

PullbackResult pullback_impl(const Matrix<Rational>& a, Side side) {
    if (!a.square()) throw NotSquare("pullback requires a square matrix");

    const std::vector<Rational> ones(a.rows(), Rational(1));
    PullbackResult result;
    result.side = side;
    result.z = solve_exact(side == Side::left ? a.transpose() : a, ones);
    result.b = apply_scaling(a, DiagonalScaling<Rational>{result.z, side});

    result.sign_pattern.reserve(result.z.size());
    for (const Rational& v : result.z) result.sign_pattern.push_back(sign_of(v));
    result.all_positive = std::all_of(result.z.begin(), result.z.end(),
                                      [](const Rational& v) { return v.sign() > 0; });

    const std::vector<Rational> sums =
        side == Side::left ? col_sums(result.b) : row_sums(result.b);
    for (const Rational& s : sums) {
        if (!s.is_one()) throw InternalError("pullback solve left a sum different from 1");
    }
    return result;
}

bool is_identity_diagonal(const std::vector<Rational>& z) {
    return std::all_of(z.begin(), z.end(), [](const Rational& v) { return v.is_one(); });
}

} // namespace

PullbackResult pullback(const Matrix<Rational>& a) { return pullback_impl(a, Side::left); }

PullbackResult pullback_right(const Matrix<Rational>& a) {
    return pullback_impl(a, Side::right);
}

ChainProbe pullback_chain_probe(const Matrix<Rational>& a, std::size_t depth) {
    if (!a.square()) throw NotSquare("pullback requires a square matrix");

    ChainProbe probe;
    Matrix<Rational> current = a;
    while (probe.links.size() < depth) {
        const StochasticityReport<Rational> report = stochasticity(current);
        const Side side = report.col_stochastic && !report.row_stochastic ? Side::right
                                                                          : Side::left;
        PullbackResult link;
        try {
            link = pullback_impl(current, side);
        } catch (const SingularMatrix&) {
            probe.stop = ChainStop::singular;
            return probe;
        }
        if (is_identity_diagonal(link.z)) {
            probe.stop = ChainStop::identity_no_progress;
            return probe;
        }
        const bool positive = link.all_positive;
        current = link.b;
        probe.links.push_back(std::move(link));
        if (!positive) {
            probe.stop = ChainStop::non_positive_diagonal;
            return probe;
        }
    }
    probe.stop = ChainStop::depth_reached;
    return probe;
}

} // namespace sinklab
