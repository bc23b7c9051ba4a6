#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divcon/rational.hpp"
#include "divcon/sparse_poly.hpp"

namespace divcon {

namespace detail {

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) {
        d += x;
    }
    return d;
}

/// Exact square root of a positive rational, if it has one.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) {
        return std::nullopt;
    }
    const Integer n = numerator_of(q);
    const Integer d = denominator_of(q);
    const Integer sn = boost::multiprecision::sqrt(n);
    const Integer sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) {
        return std::nullopt;
    }
    return Rational(sn, sd);
}

}  // namespace detail

/// Square root R of p with leading coefficient 1 in the lex order of
/// p.variables(), provided p's leading coefficient is 1 and p == R^2.
/// Terms are peeled from the top; the result is checked by re-expansion.
inline std::optional<SparsePoly> monic_polynomial_sqrt(const SparsePoly& p) {
    if (p.is_zero()) {
        return SparsePoly(p.variables());
    }
    const auto& [top_e, top_c] = *p.terms().rbegin();
    if (top_c != 1) {
        return std::nullopt;
    }
    int max_deg = 0;
    int min_deg = detail::total_degree(top_e);
    for (const auto& [e, _] : p.terms()) {
        max_deg = std::max(max_deg, detail::total_degree(e));
        min_deg = std::min(min_deg, detail::total_degree(e));
    }
    if (max_deg % 2 != 0 || min_deg % 2 != 0) {
        return std::nullopt;
    }
    Exponents lead(top_e.size());
    for (std::size_t k = 0; k < lead.size(); ++k) {
        if (top_e[k] % 2 != 0) {
            return std::nullopt;
        }
        lead[k] = top_e[k] / 2;
    }
    SparsePoly root(p.variables());
    root.add_term(lead, 1);
    SparsePoly rem = p - root * root;
    while (!rem.is_zero()) {
        const auto& [e, c] = *rem.terms().rbegin();
        Exponents t(e.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            t[k] = e[k] - lead[k];
            if (t[k] < 0) {
                return std::nullopt;
            }
        }
        // Every term of a square root sits between half the lowest and half
        // the highest total degree of p.
        const int td = detail::total_degree(t);
        if (2 * td > max_deg || 2 * td < min_deg) {
            return std::nullopt;
        }
        SparsePoly step(p.variables());
        step.add_term(t, c / 2);
        rem -= Rational(2) * root * step + step * step;
        root += step;
    }
    if (!(root * root == p)) {
        return std::nullopt;
    }
    return root;
}

/// q == scale * (x3 * s)^2 with s a polynomial in x3^2 and x4.
struct SquareForm {
    Rational scale = 1;
    SparsePoly s;
};

/// Decides whether q is of the form (x3 * s(x3^2, x4))^2 over the complex
/// numbers.  When q's leading coefficient (lex, x3 > x4) is a rational
/// square, scale is 1 and s carries the whole root; otherwise the irrational
/// square root of the coefficient stays in scale.  The zero polynomial is the
/// form with s = 0.
inline std::optional<SquareForm> square_form_detect(const SparsePoly& q, const std::string& x3 = "x3",
                                                    const std::string& x4 = "x4") {
    const std::vector<std::string> plane{x3, x4};
    for (const auto& v : q.used_variables()) {
        if (v != x3 && v != x4) {
            return std::nullopt;
        }
    }
    const SparsePoly in_plane = q.over(plane);
    if (in_plane.is_zero()) {
        return SquareForm{1, SparsePoly(plane)};
    }
    const Rational lc = in_plane.terms().rbegin()->second;
    auto root = monic_polynomial_sqrt(in_plane * (Rational(1) / lc));
    if (!root) {
        return std::nullopt;
    }
    SparsePoly s(plane);
    for (const auto& [e, c] : root->terms()) {
        if (e[0] % 2 == 0) {
            return std::nullopt;
        }
        s.add_term({e[0] - 1, e[1]}, c);
    }
    SquareForm out{lc, s};
    if (auto sq = detail::rational_sqrt(lc)) {
        out.scale = 1;
        out.s = s * *sq;
    }
    const SparsePoly x3s = SparsePoly::variable(x3) * out.s;
    if (!(out.scale * (x3s * x3s) == q)) {
        return std::nullopt;
    }
    return out;
}

}  // namespace divcon
