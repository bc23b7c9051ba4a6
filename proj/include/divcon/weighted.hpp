#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/rational.hpp"
#include "divcon/sparse_poly.hpp"

namespace divcon {

/// Positive rational weights keyed by variable name.
class WeightAssignment {
public:
    WeightAssignment() = default;

    WeightAssignment(std::initializer_list<std::pair<const std::string, Rational>> init)
        : WeightAssignment(std::map<std::string, Rational>(init)) {}

    explicit WeightAssignment(std::map<std::string, Rational> weights) : weights_(std::move(weights)) {
        for (const auto& [name, w] : weights_) {
            if (w <= 0) {
                throw PreconditionError("weight of '" + name + "' must be positive, got " + to_string(w));
            }
        }
    }

    WeightAssignment(const std::vector<std::string>& names, const std::vector<Rational>& values) {
        if (names.size() != values.size()) {
            throw PreconditionError("weight list and variable list differ in length");
        }
        std::map<std::string, Rational> w;
        for (std::size_t k = 0; k < names.size(); ++k) {
            w[names[k]] = values[k];
        }
        *this = WeightAssignment(std::move(w));
    }

    const Rational& of(const std::string& name) const {
        auto it = weights_.find(name);
        if (it == weights_.end()) {
            throw MissingWeightError("no weight for variable '" + name + "'");
        }
        return it->second;
    }

    bool has(const std::string& name) const { return weights_.contains(name); }
    const std::map<std::string, Rational>& values() const { return weights_; }

private:
    std::map<std::string, Rational> weights_;
};

/// A weighted order: an exact rational, or +infinity for the zero polynomial.
class WeightedOrder {
public:
    WeightedOrder(Rational v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static WeightedOrder infinity() { return WeightedOrder(); }

    bool is_infinite() const { return !value_.has_value(); }

    const Rational& value() const {
        if (!value_) {
            throw Error("weighted order is infinite");
        }
        return *value_;
    }

    friend bool operator==(const WeightedOrder& a, const WeightedOrder& b) { return a.value_ == b.value_; }

    friend bool operator<(const WeightedOrder& a, const WeightedOrder& b) {
        if (a.is_infinite()) {
            return false;
        }
        return b.is_infinite() || *a.value_ < *b.value_;
    }
    friend bool operator>(const WeightedOrder& a, const WeightedOrder& b) { return b < a; }
    friend bool operator<=(const WeightedOrder& a, const WeightedOrder& b) { return !(b < a); }
    friend bool operator>=(const WeightedOrder& a, const WeightedOrder& b) { return !(a < b); }

    friend WeightedOrder operator+(const WeightedOrder& a, const WeightedOrder& b) {
        if (a.is_infinite() || b.is_infinite()) {
            return infinity();
        }
        return WeightedOrder(*a.value_ + *b.value_);
    }

    std::string str() const { return value_ ? to_string(*value_) : "inf"; }

private:
    WeightedOrder() = default;
    std::optional<Rational> value_;
};

/// Weight of one exponent vector of p; only variables with nonzero exponent need weights.
inline Rational monomial_weight(const SparsePoly& p, const Exponents& e, const WeightAssignment& w) {
    Rational total = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] != 0) {
            total += w.of(p.variables()[k]) * e[k];
        }
    }
    return total;
}

inline WeightedOrder weighted_order(const SparsePoly& p, const WeightAssignment& w) {
    std::optional<Rational> best;
    for (const auto& [e, _] : p.terms()) {
        Rational d = monomial_weight(p, e, w);
        if (!best || d < *best) {
            best = std::move(d);
        }
    }
    return best ? WeightedOrder(*best) : WeightedOrder::infinity();
}

namespace detail {

template <class Keep>
SparsePoly filter_by_weight(const SparsePoly& p, const WeightAssignment& w, Keep keep) {
    SparsePoly out(p.variables());
    for (const auto& [e, c] : p.terms()) {
        if (keep(monomial_weight(p, e, w))) {
            out.add_term(e, c);
        }
    }
    return out;
}

}  // namespace detail

/// Sum of the terms of weight exactly d.
inline SparsePoly homogeneous_part(const SparsePoly& p, const WeightAssignment& w, const Rational& d) {
    return detail::filter_by_weight(p, w, [&](const Rational& x) { return x == d; });
}

inline SparsePoly truncate_le(const SparsePoly& p, const WeightAssignment& w, const Rational& d) {
    return detail::filter_by_weight(p, w, [&](const Rational& x) { return x <= d; });
}

inline SparsePoly truncate_gt(const SparsePoly& p, const WeightAssignment& w, const Rational& d) {
    return detail::filter_by_weight(p, w, [&](const Rational& x) { return x > d; });
}

/// True for the zero polynomial.
inline bool is_weighted_homogeneous(const SparsePoly& p, const WeightAssignment& w, const Rational& d) {
    for (const auto& [e, _] : p.terms()) {
        if (monomial_weight(p, e, w) != d) {
            return false;
        }
    }
    return true;
}

/// A diagonal cyclic action of Z/n: the generator multiplies each variable
/// by exp(2 pi i * character / n).
class GroupAction {
public:
    GroupAction(long long order, std::map<std::string, long long> characters) : order_(order) {
        if (order <= 0) {
            throw PreconditionError("group order must be positive");
        }
        for (auto& [name, c] : characters) {
            characters_[name] = mod_floor(c, order);
        }
    }

    GroupAction(long long order, const std::vector<std::string>& names, const std::vector<long long>& chars)
        : order_(order) {
        if (order <= 0) {
            throw PreconditionError("group order must be positive");
        }
        if (names.size() != chars.size()) {
            throw PreconditionError("character list and variable list differ in length");
        }
        for (std::size_t k = 0; k < names.size(); ++k) {
            characters_[names[k]] = mod_floor(chars[k], order);
        }
    }

    long long order() const { return order_; }

    long long character_of(const std::string& name) const {
        auto it = characters_.find(name);
        if (it == characters_.end()) {
            throw MissingWeightError("no group character for variable '" + name + "'");
        }
        return it->second;
    }

    long long character_of(const SparsePoly& p, const Exponents& e) const {
        long long total = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] != 0) {
                total = mod_floor(total + character_of(p.variables()[k]) * e[k], order_);
            }
        }
        return total;
    }

private:
    long long order_;
    std::map<std::string, long long> characters_;
};

/// The common character of all terms, if there is one.  The zero polynomial
/// counts as invariant (character 0).
inline std::optional<long long> is_semi_invariant(const SparsePoly& p, const GroupAction& g) {
    std::optional<long long> chi;
    for (const auto& [e, _] : p.terms()) {
        const long long c = g.character_of(p, e);
        if (chi && *chi != c) {
            return std::nullopt;
        }
        chi = c;
    }
    return chi.value_or(0);
}

/// The c with truncate_le(phi, w, r) == c * x4 * psi, if it exists.
inline std::optional<Rational> corollary_membership(const SparsePoly& phi, const SparsePoly& psi,
                                                    const WeightAssignment& w, const Rational& r,
                                                    const std::string& x4 = "x4") {
    if (psi.is_zero()) {
        throw PreconditionError("corollary_membership needs a nonzero psi");
    }
    const SparsePoly low = truncate_le(phi, w, r);
    if (low.is_zero()) {
        return Rational(0);
    }
    const SparsePoly target = SparsePoly::variable(x4) * psi;
    const auto vars = low.merged_variables(target);
    const SparsePoly t = target.over(vars);
    const auto& [lead_e, lead_c] = *t.terms().rbegin();
    const Rational c = low.over(vars).coefficient([&] {
        std::vector<std::pair<std::string, int>> f;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            f.emplace_back(vars[k], lead_e[k]);
        }
        return f;
    }()) / lead_c;
    if (c != 0 && low == c * target) {
        return c;
    }
    return std::nullopt;
}

}  // namespace divcon
