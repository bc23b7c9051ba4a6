#pragma once

// Plain-text form of polynomials, e.g. "x1^2 + x4*x5 - 1/2*x3^4".
// Grammar: sums and products of rational literals, identifiers, integer
// powers and parenthesized sub-expressions.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/sparse_poly.hpp"

namespace divcon {

/// Terms are printed from the largest exponent vector down.
inline std::string format_polynomial(const SparsePoly& p) {
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            os << (c < 0 ? "-" : "");
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += p.variables()[k];
            if (e[k] > 1) {
                mono += "^" + std::to_string(e[k]);
            }
        }
        if (mono.empty()) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << to_string(mag) << "*" << mono;
        }
    }
    return os.str();
}

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::vector<std::string> vars)
        : text_(text), vars_(std::move(vars)), open_vars_(vars_.empty()) {}

    SparsePoly parse() {
        SparsePoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return p.over(vars_);
    }

private:
    SparsePoly expr() {
        SparsePoly acc = SparsePoly::constant(0);
        bool negate = false;
        skip_ws();
        if (peek('+') || peek('-')) {
            negate = text_[pos_++] == '-';
        }
        SparsePoly t = term();
        acc += negate ? -t : t;
        for (;;) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    SparsePoly term() {
        SparsePoly acc = unary();
        for (;;) {
            skip_ws();
            if (!peek('*')) {
                return acc;
            }
            ++pos_;
            acc *= unary();
        }
    }

    SparsePoly unary() {
        skip_ws();
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        return power();
    }

    SparsePoly power() {
        SparsePoly base = atom();
        skip_ws();
        if (!peek('^')) {
            return base;
        }
        ++pos_;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a non-negative integer exponent");
        }
        return base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }

    SparsePoly atom() {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            SparsePoly inner = expr();
            skip_ws();
            if (!peek(')')) {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            digits();
            if (peek('/') && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                digits();
            }
            return SparsePoly::constant(parse_rational(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
                if (!open_vars_) {
                    fail("unknown variable '" + name + "'");
                }
                vars_.push_back(name);
            }
            return SparsePoly::variable(name);
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    void digits() {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                         ": " + what);
    }

    std::string_view text_;
    std::vector<std::string> vars_;
    bool open_vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text over the given variables.  With an empty list, variables are
/// collected in order of first appearance.
inline SparsePoly parse_polynomial(std::string_view text, std::vector<std::string> vars = {}) {
    return detail::PolyParser(text, std::move(vars)).parse();
}

}  // namespace divcon
