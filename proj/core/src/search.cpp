#include "sinklab/search.hpp"

#include <functional>
#include <optional>
#include <random>
#include <utility>

#include "sinklab/enumerate.hpp"
#include "sinklab/errors.hpp"
#include "sinklab/linalg.hpp"
#include "sinklab/matrix_io.hpp"
#include "sinklab/parallel.hpp"
#include "sinklab/sinkhorn.hpp"

namespace sinklab {

bool matches_shape3(const Matrix<Rational>& a) {
    if (a.rows() != 3 || a.cols() != 3) throw NotThreeByThree("shape test requires a 3x3 matrix");
    if (!a.is_positive()) return false;
    const Rational& x = a(0, 0);
    const Rational& w = a(0, 1);
    const Rational& z = a(0, 2);
    const Rational& y = a(1, 0);
    const bool pattern = a(1, 1) == w && a(2, 1) == w &&   // constant middle column
                         a(1, 2) == y &&                   // symmetric middle row
                         a(2, 0) == z && a(2, 2) == x;     // reversed outer rows
    return pattern && Rational(2) * y == x + z && w == Rational(1) - x - z;
}

std::string to_string(SearchMode mode) {
    return mode == SearchMode::exhaustive ? "exhaustive" : "randomized";
}

std::string to_string(SearchPredicate predicate) {
    return predicate == SearchPredicate::one_step_nonsingular ? "oneStepNonsingular"
                                                              : "oneStepShapeCheck";
}

namespace {

// A scaling count decided from the step list itself; at most max_steps
// steps means a terminating count <= max_steps is decided exactly.
bool has_count_one(const Matrix<Rational>& m, std::size_t max_steps) {
    const ScalingTrace<Rational> trace = sinkhorn_iterate(m, max_steps);
    if (trace.terminated != Termination::exact_doubly_stochastic) return false;
    std::size_t count = 0;
    for (const ScalingStep<Rational>& step : trace.steps) {
        if (!step.was_identity) ++count;
    }
    return count == 1;
}

// One-step matrices terminate within 2 steps; 4 leaves slack while still
// rejecting higher counts cheaply.
constexpr std::size_t kCountCap = 4;

void validate_spec(const SearchSpec& spec) {
    if (spec.n < 2) throw InvalidArgument("search dimension must be at least 2");
    if (spec.n > 4) throw InvalidArgument("search is desk-scale only: n must be at most 4");
    if (spec.denominator_bound < 2) throw InvalidArgument("denominator bound must be at least 2");
    if (spec.predicate == SearchPredicate::one_step_shape_check && spec.n != 3) {
        throw InvalidArgument("the shape predicate is defined for 3x3 matrices only");
    }
    if (spec.mode == SearchMode::randomized && spec.samples == 0) {
        throw InvalidArgument("randomized mode needs a positive sample count");
    }
    if (spec.workers == 0) throw InvalidArgument("worker count must be positive");
}

// Samples are drawn sequentially from one generator so the stream does not
// depend on the worker count: entry values in 1..bound, row-major, each row
// normalized by its sum.
std::vector<Matrix<Rational>> draw_samples(const SearchSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const std::uint64_t bound = static_cast<std::uint64_t>(spec.denominator_bound);
    std::vector<Matrix<Rational>> samples;
    samples.reserve(spec.samples);
    for (std::uint64_t s = 0; s < spec.samples; ++s) {
        std::vector<std::vector<long>> raw(spec.n, std::vector<long>(spec.n));
        for (std::size_t i = 0; i < spec.n; ++i)
            for (std::size_t j = 0; j < spec.n; ++j)
                raw[i][j] = static_cast<long>(rng() % bound) + 1;
        Matrix<Rational> m(spec.n, spec.n, Rational(0));
        for (std::size_t i = 0; i < spec.n; ++i) {
            long sum = 0;
            for (long v : raw[i]) sum += v;
            for (std::size_t j = 0; j < spec.n; ++j) m(i, j) = Rational(raw[i][j], sum);
        }
        samples.push_back(std::move(m));
    }
    return samples;
}

bool is_witness(const Finding& f, SearchPredicate predicate) {
    return predicate == SearchPredicate::one_step_nonsingular ? !f.det.is_zero()
                                                              : !f.matches_shape3;
}

} // namespace

SearchReport search_one_step(const SearchSpec& spec) {
    validate_spec(spec);

    std::function<Matrix<Rational>(std::uint64_t)> source;
    std::uint64_t total = 0;
    std::vector<Matrix<Rational>> samples;
    std::optional<RowStochasticEnumeration> stream;
    if (spec.mode == SearchMode::exhaustive) {
        stream.emplace(spec.n, spec.denominator_bound);
        total = stream->total();
        source = [&stream](std::uint64_t i) { return stream->matrix_at(i); };
    } else {
        samples = draw_samples(spec);
        total = spec.samples;
        source = [&samples](std::uint64_t i) { return samples[i]; };
    }

    SearchReport report;
    report.spec = spec;
    report.examined = total;
    report.findings = collect_blocks(total, spec.workers, [&](std::uint64_t begin,
                                                              std::uint64_t end) {
        std::vector<Finding> hits;
        for (std::uint64_t i = begin; i < end; ++i) {
            Matrix<Rational> m = source(i);
            if (!has_count_one(m, kCountCap)) continue;
            Finding f;
            f.det = determinant(m);
            f.one_step = true;
            f.matches_shape3 = spec.n == 3 && matches_shape3(m);
            f.matrix = std::move(m);
            hits.push_back(std::move(f));
        }
        return hits;
    });

    // Soundness gate: every finding re-verified through separate calls
    // before it can be emitted or counted as a witness.
    for (const Finding& f : report.findings) {
        const std::optional<std::size_t> count = scaling_count(f.matrix, kCountCap);
        if (!count || *count != 1) throw InternalError("finding failed count re-verification");
        if (determinant_cofactor(f.matrix) != f.det) {
            throw InternalError("finding failed determinant re-verification");
        }
        if (spec.n == 3 && matches_shape3(f.matrix) != f.matches_shape3) {
            throw InternalError("finding failed shape re-verification");
        }
        if (is_witness(f, spec.predicate)) ++report.witnesses;
    }
    return report;
}

std::string render_search_report(const SearchReport& report) {
    const SearchSpec& spec = report.spec;
    std::string out = "one-step search\n";
    out += "mode: " + to_string(spec.mode) + "\n";
    out += "n: " + std::to_string(spec.n) + "\n";
    out += "denominator bound: " + std::to_string(spec.denominator_bound) + "\n";
    out += "predicate: " + to_string(spec.predicate) + "\n";
    if (spec.mode == SearchMode::randomized) {
        out += "seed: " + std::to_string(spec.seed) + "\n";
        out += "samples: " + std::to_string(spec.samples) + "\n";
    }
    out += "matrices examined: " + std::to_string(report.examined) + "\n";
    out += "one-step findings: " + std::to_string(report.findings.size()) + "\n";

    for (std::size_t i = 0; i < report.findings.size(); ++i) {
        const Finding& f = report.findings[i];
        out += "\nfinding " + std::to_string(i + 1) + "\n";
        out += "det: " + f.det.str() + "\n";
        out += std::string("shape3: ") +
               (spec.n == 3 ? (f.matches_shape3 ? "yes" : "no") : "n/a") + "\n";
        out += matrix_to_text(f.matrix);
    }

    out += std::string("\nwitness condition: ") +
           (spec.predicate == SearchPredicate::one_step_nonsingular
                ? "one-step matrix with nonzero determinant"
                : "3x3 one-step matrix outside the symmetric shape") +
           "\n";
    out += "witnesses: " + std::to_string(report.witnesses) + "\n";
    if (report.witnesses == 0) {
        out += "OPEN — no witness found up to bound " +
               std::to_string(spec.denominator_bound) + "\n";
    }
    return out;
}

} // namespace sinklab
