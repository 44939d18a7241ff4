#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinklab/enumerate.hpp"
#include "sinklab/errors.hpp"
#include "sinklab/family.hpp"
#include "sinklab/linalg.hpp"
#include "sinklab/matrix_io.hpp"
#include "sinklab/pullback.hpp"
#include "sinklab/search.hpp"
#include "sinklab/sinkhorn.hpp"

using json = nlohmann::json;
using namespace sinklab;

namespace {

AnyMatrix read_input(const std::string& path) {
    if (path == "-") return read_matrix_text(std::cin);
    return read_matrix_file(path);
}

json matrix_json(const Matrix<Rational>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return {{"kind", "rational"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json matrix_json(const Matrix<double>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return {{"kind", "float"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

std::string deviation_text(const Rational& v) { return v.str(); }
std::string deviation_text(double v) { return float_entry_text(v); }
json deviation_json(const Rational& v) { return v.str(); }
json deviation_json(double v) { return v; }

const char* termination_label(Termination t) {
    switch (t) {
        case Termination::exact_doubly_stochastic: return "exactDoublyStochastic";
        case Termination::converged_within_tolerance: return "convergedWithinTolerance";
        case Termination::iteration_cap_reached: return "iterationCapReached";
    }
    throw InternalError("unknown termination state");
}

const char* direction_label(StepDirection d) {
    return d == StepDirection::row ? "row" : "column";
}

const char* case_label(DeterminantCase c) {
    switch (c) {
        case DeterminantCase::duplicate_columns: return "duplicateColumns";
        case DeterminantCase::duplicate_rows: return "duplicateRows";
        case DeterminantCase::formula_3x3: return "formula3x3";
    }
    throw InternalError("unknown determinant case");
}

char sign_char(Sign s) { return s == Sign::positive ? '+' : (s == Sign::negative ? '-' : '0'); }

const char* chain_stop_label(ChainStop s) {
    switch (s) {
        case ChainStop::singular: return "singular";
        case ChainStop::non_positive_diagonal: return "nonPositiveDiagonal";
        case ChainStop::identity_no_progress: return "identityNoProgress";
        case ChainStop::depth_reached: return "depthReached";
    }
    throw InternalError("unknown chain stop state");
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Per-step deviation norms come from replaying the recorded steps, so the
// report is a pure function of the trace.
template <Scalar T>
void print_trace(const ScalingTrace<T>& trace, bool emit_intermediates) {
    std::cout << "scaling report\n";
    std::cout << "mode: " << (is_exact_scalar_v<T> ? "exact" : "float") << "\n";
    std::cout << "terminated: " << termination_label(trace.terminated) << "\n";
    std::cout << "steps: " << trace.steps.size() << "\n";
    std::cout << "scaling count: "
              << (trace.scaling_count ? std::to_string(*trace.scaling_count) : "undefined")
              << "\n";
    const std::vector<Matrix<T>> states = replay_trace(trace);
    if (emit_intermediates) {
        std::cout << "initial:\n" << matrix_to_text(states.front());
    }
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const ScalingStep<T>& step = trace.steps[k];
        const StochasticityReport<T> after = stochasticity(states[k + 1]);
        std::cout << "step " << k + 1 << ": " << direction_label(step.direction)
                  << (step.was_identity ? " identity" : " scaled");
        std::cout << " | max row dev " << deviation_text(after.max_row_deviation)
                  << " | max col dev " << deviation_text(after.max_col_deviation) << " | diag";
        for (const T& v : step.diagonal.values) std::cout << ' ' << deviation_text(v);
        std::cout << "\n";
        if (emit_intermediates && k + 1 < trace.steps.size()) {
            std::cout << matrix_to_text(states[k + 1]);
        }
    }
    std::cout << "final:\n" << matrix_to_text(trace.final);
}

template <Scalar T>
json trace_json(const ScalingTrace<T>& trace, bool emit_intermediates) {
    const std::vector<Matrix<T>> states = replay_trace(trace);
    json steps = json::array();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const ScalingStep<T>& step = trace.steps[k];
        const StochasticityReport<T> after = stochasticity(states[k + 1]);
        json diag = json::array();
        for (const T& v : step.diagonal.values) diag.push_back(deviation_json(v));
        steps.push_back({{"index", k + 1},
                         {"direction", direction_label(step.direction)},
                         {"identity", step.was_identity},
                         {"diagonal", diag},
                         {"maxRowDeviation", deviation_json(after.max_row_deviation)},
                         {"maxColDeviation", deviation_json(after.max_col_deviation)}});
    }
    json out = {{"mode", is_exact_scalar_v<T> ? "exact" : "float"},
                {"terminated", termination_label(trace.terminated)},
                {"steps", steps},
                {"scalingCount",
                 trace.scaling_count ? json(*trace.scaling_count) : json(nullptr)},
                {"final", matrix_json(trace.final)}};
    if (emit_intermediates) {
        json inter = json::array();
        for (const Matrix<T>& s : states) inter.push_back(matrix_json(s));
        out["states"] = inter;
    }
    return out;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_scale(const std::string& input, bool exact, std::size_t max_steps, double tolerance,
              bool emit_intermediates, bool as_json) {
    const AnyMatrix any = read_input(input);
    if (exact) {
        if (tolerance != 0.0) throw NonzeroToleranceInExactMode();
        const ScalingTrace<Rational> trace = sinkhorn_iterate(as_rational(any), max_steps);
        if (as_json) {
            emit_json(trace_json(trace, emit_intermediates));
        } else {
            print_trace(trace, emit_intermediates);
        }
        return 0;
    }
    const ScalingTrace<double> trace = sinkhorn_iterate(to_float(any), max_steps, tolerance);
    if (as_json) {
        emit_json(trace_json(trace, emit_intermediates));
    } else {
        print_trace(trace, emit_intermediates);
    }
    return 0;
}

int run_generate(long k, long ell, long n, const std::string& x_text, const std::string& z_text,
                 const std::string& emit, bool allow_degenerate, bool as_json) {
    const Rational x = Rational::parse(x_text);
    const Rational z = Rational::parse(z_text);
    const FamilyParams p = validate_params(k, ell, n, x, z, allow_degenerate);
    if (emit == "matrix") {
        const Matrix<Rational> a = build_family_matrix(p);
        if (as_json) {
            emit_json({{"params",
                        {{"k", p.k},
                         {"ell", p.ell},
                         {"n", p.n},
                         {"x", p.x.str()},
                         {"z", p.z.str()},
                         {"y", p.y.str()},
                         {"w", p.w.str()}}},
                       {"matrix", matrix_json(a)}});
        } else {
            std::cout << matrix_to_text(a);
        }
        return 0;
    }

    const OneStepReport r = verify_one_step(p);
    const FamilyDeterminant d = family_determinant(p);
    if (as_json) {
        emit_json({{"params",
                    {{"k", p.k},
                     {"ell", p.ell},
                     {"n", p.n},
                     {"x", p.x.str()},
                     {"z", p.z.str()},
                     {"y", p.y.str()},
                     {"w", p.w.str()}}},
                   {"rowSumsOne", r.row_sums_one},
                   {"colSumsTwoLevel", r.col_sums_two_level},
                   {"outerColSum", r.outer_col_sum.str()},
                   {"innerColSum", r.inner_col_sum.str()},
                   {"colScaledDoublyStochastic", r.col_scaled_doubly_stochastic},
                   {"scalingCount", r.count ? json(*r.count) : json(nullptr)},
                   {"scalingCountOne", r.scaling_count_one},
                   {"determinant", d.det.str()},
                   {"determinantCase", case_label(d.case_tag)},
                   {"allPass", r.all_pass()}});
        return 0;
    }
    std::cout << "family report\n";
    std::cout << "params: k=" << p.k << " ell=" << p.ell << " n=" << p.n << " x=" << p.x.str()
              << " z=" << p.z.str() << "\n";
    std::cout << "derived: y=" << p.y.str() << " w=" << p.w.str() << "\n";
    std::cout << "row sums one: " << yes_no(r.row_sums_one) << "\n";
    std::cout << "column sums two-level: " << yes_no(r.col_sums_two_level) << " (outer "
              << r.outer_col_sum.str() << ", inner " << r.inner_col_sum.str() << ")\n";
    std::cout << "column scaled doubly stochastic: " << yes_no(r.col_scaled_doubly_stochastic)
              << "\n";
    std::cout << "scaling count one: " << yes_no(r.scaling_count_one) << " (count "
              << (r.count ? std::to_string(*r.count) : "undefined") << ")\n";
    std::cout << "determinant: " << d.det.str() << " (" << case_label(d.case_tag) << ")\n";
    std::cout << "all checks pass: " << yes_no(r.all_pass()) << "\n";
    return 0;
}

int run_check(const std::string& input, double tolerance, bool as_json) {
    const AnyMatrix any = read_input(input);
    return std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m(0, 0))>;
            T tol;
            if constexpr (is_exact_scalar_v<T>) {
                if (tolerance != 0.0) throw NonzeroToleranceInExactMode();
                tol = T(0);
            } else {
                tol = tolerance;
            }
            const StochasticityReport<T> r = stochasticity(m, tol);
            std::optional<T> det;
            if (m.square()) det = determinant(m);
            if (as_json) {
                json out = {{"scalarKind",
                             is_exact_scalar_v<T> ? "rational" : "float"},
                            {"rows", m.rows()},
                            {"cols", m.cols()},
                            {"nonnegative", r.nonnegative},
                            {"positive", m.is_positive()},
                            {"rowStochastic", r.row_stochastic},
                            {"colStochastic", r.col_stochastic},
                            {"maxRowDeviation", deviation_json(r.max_row_deviation)},
                            {"maxColDeviation", deviation_json(r.max_col_deviation)},
                            {"doublyStochastic", r.doubly_stochastic()},
                            {"determinant", det ? deviation_json(*det) : json(nullptr)}};
                emit_json(out);
                return 0;
            }
            std::cout << "matrix check\n";
            std::cout << "scalar kind: " << (is_exact_scalar_v<T> ? "rational" : "float")
                      << "\n";
            std::cout << "shape: " << m.rows() << " x " << m.cols() << "\n";
            std::cout << "nonnegative: " << yes_no(r.nonnegative) << "\n";
            std::cout << "positive: " << yes_no(m.is_positive()) << "\n";
            std::cout << "row stochastic: " << yes_no(r.row_stochastic) << "\n";
            std::cout << "column stochastic: " << yes_no(r.col_stochastic) << "\n";
            std::cout << "max row deviation: " << deviation_text(r.max_row_deviation) << "\n";
            std::cout << "max col deviation: " << deviation_text(r.max_col_deviation) << "\n";
            std::cout << "doubly stochastic: " << yes_no(r.doubly_stochastic()) << "\n";
            if (det) {
                std::cout << "determinant: " << deviation_text(*det) << "\n";
            } else {
                std::cout << "determinant: n/a (matrix not square)\n";
            }
            return 0;
        },
        any);
}

void print_pullback_result(const PullbackResult& r) {
    std::cout << "side: " << (r.side == Side::left ? "left" : "right") << "\n";
    std::cout << "z:";
    for (const Rational& v : r.z) std::cout << ' ' << v.str();
    std::cout << "\nsign pattern:";
    for (Sign s : r.sign_pattern) std::cout << ' ' << sign_char(s);
    std::cout << "\nall positive: " << yes_no(r.all_positive) << "\n";
    std::cout << "B:\n" << matrix_to_text(r.b);
}

json pullback_json(const PullbackResult& r) {
    json z = json::array();
    for (const Rational& v : r.z) z.push_back(v.str());
    json signs = json::array();
    for (Sign s : r.sign_pattern) signs.push_back(std::string(1, sign_char(s)));
    return {{"side", r.side == Side::left ? "left" : "right"},
            {"z", z},
            {"signPattern", signs},
            {"allPositive", r.all_positive},
            {"b", matrix_json(r.b)}};
}

int run_pullback(const std::string& input, std::optional<std::size_t> chain_depth,
                 bool as_json) {
    const AnyMatrix any = read_input(input);
    const Matrix<Rational>& a = as_rational(any);
    if (!chain_depth) {
        const PullbackResult r = pullback(a);
        if (as_json) {
            emit_json(pullback_json(r));
        } else {
            std::cout << "pullback\n";
            print_pullback_result(r);
        }
        return 0;
    }
    const ChainProbe probe = pullback_chain_probe(a, *chain_depth);
    if (as_json) {
        json links = json::array();
        for (const PullbackResult& r : probe.links) links.push_back(pullback_json(r));
        emit_json({{"links", links}, {"stop", chain_stop_label(probe.stop)}});
        return 0;
    }
    std::cout << "pullback chain\n";
    std::cout << "links: " << probe.links.size() << "\n";
    std::cout << "stop: " << chain_stop_label(probe.stop) << "\n";
    for (std::size_t i = 0; i < probe.links.size(); ++i) {
        std::cout << "link " << i + 1 << "\n";
        print_pullback_result(probe.links[i]);
    }
    return 0;
}

int run_search(const SearchSpec& spec, bool as_json) {
    const SearchReport report = search_one_step(spec);
    if (!as_json) {
        std::cout << render_search_report(report);
        return 0;
    }
    json findings = json::array();
    for (const Finding& f : report.findings) {
        findings.push_back({{"det", f.det.str()},
                            {"oneStep", f.one_step},
                            {"matchesShape3",
                             spec.n == 3 ? json(f.matches_shape3) : json(nullptr)},
                            {"matrix", matrix_json(f.matrix)}});
    }
    json out = {{"mode", to_string(spec.mode)},
                {"n", spec.n},
                {"denominatorBound", spec.denominator_bound},
                {"predicate", to_string(spec.predicate)},
                {"examined", report.examined},
                {"findings", findings},
                {"witnesses", report.witnesses},
                {"open", report.witnesses == 0}};
    if (spec.mode == SearchMode::randomized) {
        out["seed"] = spec.seed;
        out["samples"] = spec.samples;
    }
    emit_json(out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix scaling laboratory: exact and floating-point alternate scaling,\n"
                 "one-step families, determinant diagnostics, pullbacks, and searches"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON (rationals as \"p/q\" strings)");

    // scale
    auto* scale = app.add_subcommand("scale", "run the alternate scaling algorithm on a matrix");
    std::string scale_input;
    bool scale_exact = false;
    std::size_t scale_max_steps = kDefaultMaxSteps;
    double scale_tolerance = kDefaultFloatTolerance;
    bool emit_intermediates = false;
    scale->add_option("--input", scale_input, "matrix file in the interchange format, - for stdin")
        ->required();
    scale->add_flag("--exact", scale_exact,
                    "exact rational mode: terminates only on exact double stochasticity");
    scale->add_option("--max-steps", scale_max_steps,
                      "step cap (default 10000 float, 32 exact)");
    scale->add_option("--tolerance", scale_tolerance,
                      "max deviation treated as stochastic (float mode; default 1e-12)");
    scale->add_flag("--emit-intermediates", emit_intermediates,
                    "include every intermediate matrix in the report");

    // generate
    auto* generate = app.add_subcommand("generate", "build a one-step family matrix");
    long gen_k = 0;
    long gen_ell = 0;
    long gen_n = 0;
    std::string gen_x;
    std::string gen_z;
    std::string gen_emit = "matrix";
    bool gen_allow_degenerate = false;
    generate->add_option("--k", gen_k, "outer column band width")->required();
    generate->add_option("--ell", gen_ell, "outer row band width")->required();
    generate->add_option("--n", gen_n, "dimension; must exceed max(2k, 2ell)")->required();
    generate->add_option("--x", gen_x, "first outer value, e.g. 1/5")->required();
    generate->add_option("--z", gen_z, "second outer value, e.g. 3/5")->required();
    generate->add_option("--emit", gen_emit, "matrix (default) or report")
        ->check(CLI::IsMember({"matrix", "report"}));
    generate->add_flag("--allow-degenerate-sum", gen_allow_degenerate,
                       "accept x+z = 2/n (the already-doubly-stochastic case)");

    // check
    auto* check = app.add_subcommand("check", "stochasticity and determinant report");
    std::string check_input;
    double check_tolerance = 0.0;
    check->add_option("--input", check_input, "matrix file, - for stdin")->required();
    check->add_option("--tolerance", check_tolerance,
                      "max deviation treated as stochastic (float matrices only; default 0)");

    // pullback
    auto* pull = app.add_subcommand(
        "pullback", "solve for the diagonal Z making Z*A column stochastic");
    std::string pull_input;
    std::size_t pull_chain = 0;
    pull->add_option("--input", pull_input, "rational matrix file, - for stdin")->required();
    auto* chain_opt =
        pull->add_option("--chain", pull_chain, "probe repeated pullbacks up to this depth");

    // search
    auto* search = app.add_subcommand("search", "scan row stochastic matrices for one-step hits");
    SearchSpec spec;
    std::string mode_text = "exhaustive";
    std::string predicate_text = "oneStepNonsingular";
    search->add_option("--n", spec.n, "dimension (2..4, default 3)");
    search->add_option("--bound", spec.denominator_bound, "denominator bound (default 5)");
    search->add_option("--mode", mode_text, "exhaustive (default) or randomized")
        ->check(CLI::IsMember({"exhaustive", "randomized"}));
    auto* seed_opt = search->add_option("--seed", spec.seed, "RNG seed (randomized mode)");
    auto* samples_opt =
        search->add_option("--samples", spec.samples, "sample count (randomized mode)");
    search->add_option("--predicate", predicate_text,
                       "oneStepNonsingular (default) or oneStepShapeCheck")
        ->check(CLI::IsMember({"oneStepNonsingular", "oneStepShapeCheck"}));
    search->add_option("--workers", spec.workers, "shard count (default 1); never affects output");

    try {
        app.parse(argc, argv);

        if (scale->parsed()) {
            if (scale->count("--max-steps") == 0) {
                scale_max_steps = scale_exact ? kDefaultExactCountCap : kDefaultMaxSteps;
            }
            if (scale_exact && scale->count("--tolerance") == 0) scale_tolerance = 0.0;
            return run_scale(scale_input, scale_exact, scale_max_steps, scale_tolerance,
                             emit_intermediates, as_json);
        }
        if (generate->parsed()) {
            return run_generate(gen_k, gen_ell, gen_n, gen_x, gen_z, gen_emit,
                                gen_allow_degenerate, as_json);
        }
        if (check->parsed()) return run_check(check_input, check_tolerance, as_json);
        if (pull->parsed()) {
            std::optional<std::size_t> depth;
            if (chain_opt->count() > 0) depth = pull_chain;
            return run_pullback(pull_input, depth, as_json);
        }
        if (search->parsed()) {
            spec.mode =
                mode_text == "exhaustive" ? SearchMode::exhaustive : SearchMode::randomized;
            spec.predicate = predicate_text == "oneStepNonsingular"
                                 ? SearchPredicate::one_step_nonsingular
                                 : SearchPredicate::one_step_shape_check;
            if (spec.mode == SearchMode::randomized) {
                if (seed_opt->count() == 0) {
                    throw InvalidArgument("randomized mode requires --seed");
                }
                if (samples_opt->count() == 0) spec.samples = 1000;
            } else {
                if (seed_opt->count() > 0 || samples_opt->count() > 0) {
                    throw InvalidArgument("--seed and --samples apply to randomized mode only");
                }
            }
            return run_search(spec, as_json);
        }
        throw InternalError("no subcommand dispatched");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
