#pragma once

#include <cstddef>
#include <vector>

#include "sinklab/matrix.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

enum class Sign { negative, zero, positive };

Sign sign_of(const Rational& v);

// Outcome of one pullback. For side = left, b = diag(z) * a is column
// stochastic; for side = right, b = a * diag(z) is row stochastic. When
// some z_i <= 0 the result is still reported (sign_pattern says where);
// no adjustment is attempted.
struct PullbackResult {
    std::vector<Rational> z;
    Side side = Side::left;
    Matrix<Rational> b;
    bool all_positive = false;
    std::vector<Sign> sign_pattern;
};

// Solves transpose(a) z = 1 so that diag(z) * a is column stochastic; the
// solution is unique because a is nonsingular. One row scaling applied to
// the result recovers a matrix with a's row directions, so a positive
// pullback adds one scaling step in front of a's own sequence.
PullbackResult pullback(const Matrix<Rational>& a);

// Mirror construction: solves a z = 1 so that a * diag(z) is row
// stochastic. Needed to continue a chain, because the left pullback of a
// column stochastic matrix is the identity diagonal.
PullbackResult pullback_right(const Matrix<Rational>& a);

enum class ChainStop {
    singular,               // next pullback hit a zero determinant
    non_positive_diagonal,  // some z_i <= 0; last link carries the pattern
    identity_no_progress,   // z = 1 would repeat the same matrix forever
    depth_reached,
};

struct ChainProbe {
    std::vector<PullbackResult> links;
    ChainStop stop = ChainStop::depth_reached;
};

// Repeatedly pulls back while each result is positive and nonsingular,
// alternating sides so successive links keep making progress: a row
// stochastic link pulls back on the left, a column stochastic one on the
// right. Reports where and why the chain stops.
ChainProbe pullback_chain_probe(const Matrix<Rational>& a, std::size_t depth);

} // namespace sinklab
