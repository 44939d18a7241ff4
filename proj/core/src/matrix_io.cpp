#include "sinklab/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "sinklab/errors.hpp"

namespace sinklab {

ScalarKind kind_of(const AnyMatrix& m) {
    return std::holds_alternative<Matrix<Rational>>(m) ? ScalarKind::rational
                                                       : ScalarKind::floating;
}

std::string float_entry_text(double x) {
    char buf[64];
    const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), x);
    if (r.ec != std::errc()) throw InternalError("float formatting failed");
    return std::string(buf, r.ptr);
}

namespace {

std::string entry_text(const Rational& v) { return v.str(); }
std::string entry_text(double v) { return float_entry_text(v); }

template <Scalar T>
std::string render(const Matrix<T>& m, std::string_view kind) {
    std::string out = "kind: ";
    out += kind;
    out += "\ndims: " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ' ';
            out += entry_text(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream stream(line);
    std::vector<std::string> tokens;
    std::string token;
    while (stream >> token) tokens.push_back(std::move(token));
    return tokens;
}

// getline with CRLF tolerance; returns false at end of input.
bool next_line(std::istream& is, std::string& line, std::size_t& line_no) {
    if (!std::getline(is, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_float_entry(const std::string& token, std::size_t line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const std::from_chars_result r = std::from_chars(begin, end, value);
    if (r.ec != std::errc() || r.ptr != end) fail(line_no, "bad float entry '" + token + "'");
    return value;
}

template <Scalar T>
Matrix<T> read_body(std::istream& is, std::size_t rows, std::size_t cols, std::size_t& line_no) {
    Matrix<T> m(rows, cols, T(0));
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!next_line(is, line, line_no)) {
            fail(line_no + 1, "unexpected end of input; expected " + std::to_string(rows - i) +
                                  " more row(s)");
        }
        const std::vector<std::string> tokens = tokens_of(line);
        if (tokens.size() != cols) {
            fail(line_no, "expected " + std::to_string(cols) + " entries, got " +
                              std::to_string(tokens.size()));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if constexpr (is_exact_scalar_v<T>) {
                try {
                    m(i, j) = Rational::parse(tokens[j]);
                } catch (const ParseError& e) {
                    fail(line_no, e.what());
                }
            } else {
                m(i, j) = parse_float_entry(tokens[j], line_no);
            }
        }
    }
    while (next_line(is, line, line_no)) {
        if (!tokens_of(line).empty()) fail(line_no, "trailing content after the matrix body");
    }
    return m;
}

} // namespace

std::string matrix_to_text(const Matrix<Rational>& m) { return render(m, "rational"); }
std::string matrix_to_text(const Matrix<double>& m) { return render(m, "float"); }

std::string matrix_to_text(const AnyMatrix& m) {
    return std::visit([](const auto& v) { return matrix_to_text(v); }, m);
}

AnyMatrix read_matrix_text(std::istream& is) {
    std::size_t line_no = 0;
    std::string line;

    if (!next_line(is, line, line_no)) fail(1, "empty input; expected 'kind: rational|float'");
    const std::vector<std::string> kind_tokens = tokens_of(line);
    if (kind_tokens.size() != 2 || kind_tokens[0] != "kind:" ||
        (kind_tokens[1] != "rational" && kind_tokens[1] != "float")) {
        fail(line_no, "expected 'kind: rational|float'");
    }
    const bool rational = kind_tokens[1] == "rational";

    if (!next_line(is, line, line_no)) fail(line_no + 1, "expected 'dims: R C'");
    const std::vector<std::string> dim_tokens = tokens_of(line);
    std::size_t rows = 0;
    std::size_t cols = 0;
    auto parse_dim = [&](const std::string& token, std::size_t& out) {
        const char* begin = token.data();
        const char* end = begin + token.size();
        const std::from_chars_result r = std::from_chars(begin, end, out);
        return r.ec == std::errc() && r.ptr == end && out > 0;
    };
    if (dim_tokens.size() != 3 || dim_tokens[0] != "dims:" || !parse_dim(dim_tokens[1], rows) ||
        !parse_dim(dim_tokens[2], cols)) {
        fail(line_no, "expected 'dims: R C' with positive integers");
    }

    if (rational) return read_body<Rational>(is, rows, cols, line_no);
    return read_body<double>(is, rows, cols, line_no);
}

AnyMatrix parse_matrix_text(const std::string& text) {
    std::istringstream stream(text);
    return read_matrix_text(stream);
}

AnyMatrix read_matrix_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InvalidArgument("cannot open matrix file '" + path + "'");
    return read_matrix_text(file);
}

const Matrix<Rational>& as_rational(const AnyMatrix& m) {
    if (const Matrix<Rational>* r = std::get_if<Matrix<Rational>>(&m)) return *r;
    throw FloatModeUnsupported("this operation is exact-only; input matrix has kind float");
}

Matrix<double> to_float(const AnyMatrix& m) {
    if (const Matrix<double>* f = std::get_if<Matrix<double>>(&m)) return *f;
    const Matrix<Rational>& r = std::get<Matrix<Rational>>(m);
    Matrix<double> out(r.rows(), r.cols(), 0.0);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) out(i, j) = r(i, j).to_double();
    return out;
}

} // namespace sinklab
