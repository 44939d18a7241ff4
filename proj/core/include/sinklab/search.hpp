#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinklab/matrix.hpp"
#include "sinklab/rational.hpp"

namespace sinklab {

enum class SearchMode { exhaustive, randomized };

// What would settle the question the search probes:
//   oneStepNonsingular - a one-step matrix with nonzero determinant
//   oneStepShapeCheck  - a 3x3 one-step matrix outside the symmetric shape
enum class SearchPredicate { one_step_nonsingular, one_step_shape_check };

struct SearchSpec {
    std::size_t n = 3;
    long denominator_bound = 5;
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t seed = 0;      // randomized mode only; always reported there
    std::uint64_t samples = 0;   // randomized mode only; must be >= 1 there
    SearchPredicate predicate = SearchPredicate::one_step_nonsingular;
    unsigned workers = 1;        // sharding only; never affects the report
};

struct Finding {
    Matrix<Rational> matrix;
    Rational det;
    bool one_step = false;
    bool matches_shape3 = false;  // meaningful only for n = 3
};

struct SearchReport {
    SearchSpec spec;
    std::uint64_t examined = 0;
    std::vector<Finding> findings;
    std::uint64_t witnesses = 0;
};

// True iff a is positive with the symmetric one-step shape
//   [[x, w, z], [y, w, y], [z, w, x]]
// where y = (x+z)/2 and w = 1-x-z hold exactly.
bool matches_shape3(const Matrix<Rational>& a);

// Collects every matrix of the spec's stream with scaling count exactly 1,
// recording determinant and shape classification. Workers shard the stream
// by contiguous index blocks and results merge in stream order, so reports
// are byte-identical across worker counts. Every finding is re-verified
// with independent count and determinant computations before emission.
SearchReport search_one_step(const SearchSpec& spec);

// Plain-text report, stable byte-for-byte for a fixed spec. Unknown
// outcomes are labelled OPEN rather than treated as nonexistence.
std::string render_search_report(const SearchReport& report);

std::string to_string(SearchMode mode);
std::string to_string(SearchPredicate predicate);

} // namespace sinklab
