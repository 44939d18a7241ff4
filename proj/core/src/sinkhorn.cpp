#include "sinklab/sinkhorn.hpp"

#include "sinklab/errors.hpp"

namespace sinklab {

namespace {

template <Scalar T>
ScalingTrace<T> iterate_impl(const Matrix<T>& a, std::size_t max_steps, const T& tolerance) {
    if (max_steps < 1) throw InvalidArgument("max_steps must be at least 1");
    if (!a.is_positive()) throw NonPositiveMatrix("alternate scaling requires a positive matrix");

    ScalingTrace<T> trace;
    trace.initial = a;

    Matrix<T> current = a;
    std::size_t count = 0;
    std::size_t performed = 0;
    for (;;) {
        StochasticityReport<T> rep = stochasticity(current, tolerance);
        if (rep.doubly_stochastic()) {
            trace.terminated = is_exact_scalar_v<T> ? Termination::exact_doubly_stochastic
                                                    : Termination::converged_within_tolerance;
            trace.scaling_count = count;
            break;
        }
        if (performed == max_steps) {
            trace.terminated = Termination::iteration_cap_reached;
            trace.scaling_count = std::nullopt;
            break;
        }
        const StepDirection direction =
            trace.steps.size() % 2 == 0 ? StepDirection::row : StepDirection::column;
        DiagonalScaling<T> diag = direction == StepDirection::row ? row_scaling_matrix(current)
                                                                  : col_scaling_matrix(current);
        const bool identity = diag.is_identity_within(tolerance);
        current = apply_scaling(current, diag);
        trace.steps.push_back({direction, std::move(diag), identity});
        if (!identity) ++count;
        ++performed;
    }
    trace.final = std::move(current);
    return trace;
}

} // namespace

ScalingTrace<Rational> sinkhorn_iterate(const Matrix<Rational>& a, std::size_t max_steps) {
    return iterate_impl<Rational>(a, max_steps, Rational(0));
}

ScalingTrace<double> sinkhorn_iterate(const Matrix<double>& a, std::size_t max_steps,
                                      double tolerance) {
    if (tolerance < 0.0) throw InvalidArgument("tolerance must be nonnegative");
    return iterate_impl<double>(a, max_steps, tolerance);
}

std::optional<std::size_t> scaling_count(const Matrix<Rational>& a, std::size_t max_steps) {
    ScalingTrace<Rational> trace = sinkhorn_iterate(a, max_steps);
    if (trace.terminated != Termination::exact_doubly_stochastic) return std::nullopt;
    return trace.scaling_count;
}

std::vector<ProfilePoint> convergence_profile(const Matrix<double>& a, std::size_t max_steps,
                                              double tolerance) {
    ScalingTrace<double> trace = sinkhorn_iterate(a, max_steps, tolerance);
    std::vector<ProfilePoint> profile;
    profile.reserve(trace.steps.size() + 1);
    Matrix<double> current = trace.initial;
    StochasticityReport<double> rep = stochasticity(current, tolerance);
    profile.push_back({0, rep.max_row_deviation, rep.max_col_deviation});
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        current = apply_scaling(current, trace.steps[k].diagonal);
        rep = stochasticity(current, tolerance);
        profile.push_back({k + 1, rep.max_row_deviation, rep.max_col_deviation});
    }
    return profile;
}

} // namespace sinklab
