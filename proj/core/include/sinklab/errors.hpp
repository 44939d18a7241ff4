#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sinklab {

// Base for everything thrown by the library. Anything deriving from
// InternalError indicates a broken invariant rather than bad input;
// the CLI maps the two groups to different exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotThreeByThree : public Error {
public:
    using Error::Error;
};

// Row/column sums must be positive before a scaling matrix exists.
class ZeroRowSum : public Error {
public:
    explicit ZeroRowSum(std::size_t row)
        : Error("row " + std::to_string(row) + " has non-positive sum; no row scaling exists"),
          row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class ZeroColSum : public Error {
public:
    explicit ZeroColSum(std::size_t col)
        : Error("column " + std::to_string(col) + " has non-positive sum; no column scaling exists"),
          col_(col) {}
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t col_;
};

class NonPositiveMatrix : public Error {
public:
    using Error::Error;
};

class NonzeroToleranceInExactMode : public Error {
public:
    NonzeroToleranceInExactMode()
        : Error("tolerance must be 0 in exact (rational) mode") {}
};

class FloatModeUnsupported : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

// Family parameter rejections, each carrying the violated constraint by name.
class InvalidFamilyParams : public Error {
public:
    using Error::Error;
};

class DimensionTooSmall : public InvalidFamilyParams {
public:
    using InvalidFamilyParams::InvalidFamilyParams;
};

class SumOutOfRange : public InvalidFamilyParams {
public:
    using InvalidFamilyParams::InvalidFamilyParams;
};

class DegenerateSum : public InvalidFamilyParams {
public:
    using InvalidFamilyParams::InvalidFamilyParams;
};

class BoundTooSmall : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace sinklab
