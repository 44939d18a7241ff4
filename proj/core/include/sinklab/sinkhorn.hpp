#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sinklab/matrix.hpp"

namespace sinklab {

inline constexpr std::size_t kDefaultMaxSteps = 10000;
inline constexpr double kDefaultFloatTolerance = 1e-12;

// Exact-mode entries roughly double in bit size per scaling step on
// matrices that do not terminate, so the exact counting cap defaults low.
inline constexpr std::size_t kDefaultExactCountCap = 32;

enum class StepDirection { row, column };

template <Scalar T>
struct ScalingStep {
    StepDirection direction;
    DiagonalScaling<T> diagonal;
    bool was_identity = false;
};

enum class Termination {
    exact_doubly_stochastic,
    converged_within_tolerance,
    iteration_cap_reached,
};

// Full record of one run of the alternate scaling algorithm. Replaying
// the steps from `initial` reproduces `final` (exactly in rational mode).
// `scaling_count` counts non-identity steps only and is empty when the
// iteration cap was reached.
template <Scalar T>
struct ScalingTrace {
    Matrix<T> initial;
    std::vector<ScalingStep<T>> steps;
    Matrix<T> final;
    Termination terminated = Termination::iteration_cap_reached;
    std::optional<std::size_t> scaling_count;
};

// Alternately row scale and column scale until doubly stochastic or the
// step cap. Row scaling is attempted first; when the input is already
// row stochastic that step is recorded with was_identity = true and does
// not count. Exact mode stops only on exact double stochasticity.
ScalingTrace<Rational> sinkhorn_iterate(const Matrix<Rational>& a,
                                        std::size_t max_steps = kDefaultMaxSteps);
ScalingTrace<double> sinkhorn_iterate(const Matrix<double>& a,
                                      std::size_t max_steps = kDefaultMaxSteps,
                                      double tolerance = kDefaultFloatTolerance);

// Number of non-identity scalings until exactly doubly stochastic, or
// nullopt when the matrix does not terminate within the cap.
std::optional<std::size_t> scaling_count(const Matrix<Rational>& a,
                                         std::size_t max_steps = kDefaultExactCountCap);

struct ProfilePoint {
    std::size_t step = 0;
    double max_row_deviation = 0.0;
    double max_col_deviation = 0.0;
};

// Deviations from double stochasticity after each step, starting with
// the unscaled matrix at step 0.
std::vector<ProfilePoint> convergence_profile(const Matrix<double>& a,
                                              std::size_t max_steps = kDefaultMaxSteps,
                                              double tolerance = kDefaultFloatTolerance);

// Intermediate matrices visited by a trace: element k is the state after
// k steps, so front() is the initial and back() the final matrix.
template <Scalar T>
std::vector<Matrix<T>> replay_trace(const ScalingTrace<T>& trace) {
    std::vector<Matrix<T>> states;
    states.reserve(trace.steps.size() + 1);
    states.push_back(trace.initial);
    for (const ScalingStep<T>& step : trace.steps)
        states.push_back(apply_scaling(states.back(), step.diagonal));
    return states;
}

} // namespace sinklab
