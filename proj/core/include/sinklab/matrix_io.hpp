#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "sinklab/matrix.hpp"

namespace sinklab {

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>>;

ScalarKind kind_of(const AnyMatrix& m);

// Shortest decimal form of a double that round-trips exactly.
std::string float_entry_text(double x);

// The interchange format used by every CLI subcommand:
//   kind: rational|float
//   dims: R C
//   R lines of C whitespace-separated entries
// Rational entries are integers, p/q fractions in lowest terms, or plain
// decimals (no exponents); float entries are any standard decimal form.
// Writing then reading is bit-exact for both kinds.
std::string matrix_to_text(const Matrix<Rational>& m);
std::string matrix_to_text(const Matrix<double>& m);
std::string matrix_to_text(const AnyMatrix& m);

// Parse errors carry 1-based line numbers.
AnyMatrix read_matrix_text(std::istream& is);
AnyMatrix parse_matrix_text(const std::string& text);
AnyMatrix read_matrix_file(const std::string& path);

// Narrowing accessors for subcommands pinned to one backend.
const Matrix<Rational>& as_rational(const AnyMatrix& m);  // FloatModeUnsupported otherwise
Matrix<double> to_float(const AnyMatrix& m);              // converts rational entries

} // namespace sinklab
