#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "divcon/errors.hpp"

namespace divcon {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

/// Largest integer <= q.
inline Integer floor_of(const Rational& q) {
    Integer n = numerator_of(q);
    Integer d = denominator_of(q);
    Integer f = n / d;
    if (n < 0 && f * d != n) {
        --f;
    }
    return f;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

/// Non-negative remainder of a mod n, n > 0.
inline Integer mod_floor(const Integer& a, const Integer& n) {
    Integer m = a % n;
    if (m < 0) {
        m += n;
    }
    return m;
}

inline long long mod_floor(long long a, long long n) {
    long long m = a % n;
    return m < 0 ? m + n : m;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
    if (is_integral(q)) {
        return numerator_of(q).str();
    }
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

namespace detail {

inline Integer parse_integer(std::string_view s, std::string_view whole) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        negative = s[pos] == '-';
        ++pos;
    }
    if (pos == s.size()) {
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    Integer z = 0;
    for (; pos < s.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
            throw ParseError("malformed rational '" + std::string(whole) + "'");
        }
        z = z * 10 + (s[pos] - '0');
    }
    return negative ? Integer(-z) : z;
}

}  // namespace detail

/// Parses "p", "-p", "p/q" (q != 0). Surrounding whitespace is ignored.
inline Rational parse_rational(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view s = text.substr(b, e - b);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(detail::parse_integer(s, text));
    }
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    Integer den = detail::parse_integer(s.substr(slash + 1), text);
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

}  // namespace divcon
