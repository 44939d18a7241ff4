#include "sinklab/rational.hpp"

#include <cctype>
#include <cstddef>

namespace sinklab {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("empty rational literal: '" + std::string(text) + "'");

    Rational result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed rational literal: '" + std::string(text) + "'");
        mpz_class d{std::string(den)};
        if (d == 0) throw ParseError("zero denominator in literal: '" + std::string(text) + "'");
        result = Rational(mpz_class(std::string(num)), std::move(d));
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty())
            throw ParseError("malformed decimal literal: '" + std::string(text) + "'");
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw ParseError("malformed decimal literal: '" + std::string(text) + "'");
        mpz_class scale = 1;
        mpz_class digits = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip));
        for (char c : fp) {
            digits = digits * 10 + (c - '0');
            scale *= 10;
        }
        result = Rational(std::move(digits), std::move(scale));
    } else {
        if (!all_digits(s))
            throw ParseError("malformed rational literal: '" + std::string(text) + "'");
        result = Rational(mpz_class(std::string(s)), mpz_class(1));
    }
    return negative ? -result : result;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

} // namespace sinklab
