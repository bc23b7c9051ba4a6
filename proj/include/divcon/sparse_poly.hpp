#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/rational.hpp"

namespace divcon {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients over
/// named variables.  Terms are keyed by exponent vectors aligned with
/// variables(); zero coefficients are never stored.  Binary operations on
/// polynomials over different variable lists act on the union of the lists
/// (left operand's order first), so a germ in x1..x4 and one in x1..x5 mix
/// freely.
class SparsePoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    SparsePoly() = default;

    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (std::size_t a = 0; a < vars_.size(); ++a) {
            for (std::size_t b = a + 1; b < vars_.size(); ++b) {
                if (vars_[a] == vars_[b]) {
                    throw Error("duplicate variable '" + vars_[a] + "'");
                }
            }
        }
    }

    static SparsePoly constant(const Rational& c, std::vector<std::string> vars = {}) {
        SparsePoly p(std::move(vars));
        p.add_term(Exponents(p.arity(), 0), c);
        return p;
    }

    static SparsePoly variable(const std::string& name) {
        SparsePoly p({name});
        p.add_term({1}, 1);
        return p;
    }

    /// c * prod name^exp.
    static SparsePoly monomial(const std::vector<std::pair<std::string, int>>& factors,
                               const Rational& c = 1) {
        std::vector<std::string> vars;
        Exponents e;
        for (const auto& [name, power] : factors) {
            if (power < 0) {
                throw Error("negative exponent for '" + name + "'");
            }
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) {
                vars.push_back(name);
                e.push_back(power);
            } else {
                e[static_cast<std::size_t>(it - vars.begin())] += power;
            }
        }
        SparsePoly p(std::move(vars));
        p.add_term(std::move(e), c);
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - vars_.begin());
    }

    /// Accumulates c into the coefficient of e, dropping it if the sum vanishes.
    void add_term(Exponents e, const Rational& c) {
        if (e.size() != vars_.size()) {
            throw Error("exponent vector of length " + std::to_string(e.size()) +
                        " for a polynomial in " + std::to_string(vars_.size()) + " variables");
        }
        for (int x : e) {
            if (x < 0) {
                throw Error("negative exponent");
            }
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Coefficient of the monomial prod name^exp (zero when absent).  Names
    /// not declared on this polynomial must carry exponent zero.
    Rational coefficient(const std::vector<std::pair<std::string, int>>& factors) const {
        Exponents e(arity(), 0);
        for (const auto& [name, power] : factors) {
            auto idx = index_of(name);
            if (!idx) {
                if (power != 0) {
                    return 0;
                }
                continue;
            }
            e[*idx] += power;
        }
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const {
        auto it = terms_.find(Exponents(arity(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Names with a nonzero exponent in some term, in declaration order.
    std::vector<std::string> used_variables() const {
        std::vector<bool> used(arity(), false);
        for (const auto& [e, _] : terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) {
                used[k] = used[k] || e[k] != 0;
            }
        }
        std::vector<std::string> out;
        for (std::size_t k = 0; k < arity(); ++k) {
            if (used[k]) {
                out.push_back(vars_[k]);
            }
        }
        return out;
    }

    int degree_in(const std::string& name) const {
        auto idx = index_of(name);
        if (!idx) {
            return 0;
        }
        int d = 0;
        for (const auto& [e, _] : terms_) {
            d = std::max(d, e[*idx]);
        }
        return d;
    }

    /// Re-expresses the polynomial over another variable list.  Every used
    /// variable must appear in the target list.
    SparsePoly over(const std::vector<std::string>& target) const {
        std::vector<std::optional<std::size_t>> where(arity());
        for (std::size_t k = 0; k < arity(); ++k) {
            auto it = std::find(target.begin(), target.end(), vars_[k]);
            if (it != target.end()) {
                where[k] = static_cast<std::size_t>(it - target.begin());
            }
        }
        SparsePoly out(target);
        for (const auto& [e, c] : terms_) {
            Exponents f(target.size(), 0);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) {
                    continue;
                }
                if (!where[k]) {
                    throw Error("variable '" + vars_[k] + "' is not in the target variable list");
                }
                f[*where[k]] = e[k];
            }
            out.add_term(std::move(f), c);
        }
        return out;
    }

    /// Union of both variable lists, this one's order first.
    std::vector<std::string> merged_variables(const SparsePoly& other) const {
        std::vector<std::string> vars = vars_;
        for (const auto& v : other.vars_) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
                vars.push_back(v);
            }
        }
        return vars;
    }

    SparsePoly operator-() const {
        SparsePoly out = *this;
        for (auto& [_, c] : out.terms_) {
            c = -c;
        }
        return out;
    }

    SparsePoly& operator+=(const SparsePoly& rhs) {
        if (rhs.vars_ != vars_) {
            *this = over(merged_variables(rhs));
        }
        const SparsePoly aligned = rhs.vars_ == vars_ ? rhs : rhs.over(vars_);
        for (const auto& [e, c] : aligned.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& rhs) { return *this += -rhs; }

    SparsePoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [_, c] : terms_) {
            c *= s;
        }
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
    friend SparsePoly operator*(const Rational& s, SparsePoly a) { return a *= s; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        const auto vars = a.merged_variables(b);
        const SparsePoly x = a.vars_ == vars ? a : a.over(vars);
        const SparsePoly y = b.vars_ == vars ? b : b.over(vars);
        SparsePoly out(vars);
        for (const auto& [ea, ca] : x.terms_) {
            for (const auto& [eb, cb] : y.terms_) {
                Exponents e(ea.size());
                for (std::size_t k = 0; k < e.size(); ++k) {
                    e[k] = ea[k] + eb[k];
                }
                out.add_term(std::move(e), ca * cb);
            }
        }
        return out;
    }

    SparsePoly& operator*=(const SparsePoly& rhs) { return *this = *this * rhs; }

    SparsePoly pow(unsigned n) const {
        SparsePoly result = constant(1, vars_);
        SparsePoly base = *this;
        while (n > 0) {
            if (n & 1U) {
                result *= base;
            }
            n >>= 1U;
            if (n > 0) {
                base *= base;
            }
        }
        return result;
    }

    /// Equal as functions of the named variables; declared-but-unused
    /// variables do not matter.
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        if (a.vars_ == b.vars_) {
            return a.terms_ == b.terms_;
        }
        const auto vars = a.merged_variables(b);
        return a.over(vars).terms_ == b.over(vars).terms_;
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Replaces every occurrence of var by replacement.
inline SparsePoly substitute(const SparsePoly& p, const std::string& var,
                             const SparsePoly& replacement) {
    auto idx = p.index_of(var);
    if (!idx) {
        return p;
    }
    const auto vars = p.merged_variables(replacement);
    std::map<int, SparsePoly> powers;
    SparsePoly out(vars);
    for (const auto& [e, c] : p.terms()) {
        Exponents rest = e;
        const int k = rest[*idx];
        rest[*idx] = 0;
        SparsePoly term(p.variables());
        term.add_term(std::move(rest), c);
        if (k == 0) {
            out += term;
            continue;
        }
        auto it = powers.find(k);
        if (it == powers.end()) {
            it = powers.emplace(k, replacement.pow(static_cast<unsigned>(k))).first;
        }
        out += term * it->second;
    }
    return out.over(vars);
}

}  // namespace divcon
