#pragma once

// Weighted blow-ups of complete-intersection germs in C^m / (1/n)(a):
// vanishing orders along E, discrepancy, E^3 and the singularity found at
// the origin of every toric chart.
//
//   a(E) = sum v_i - sum ord_E(phi_k) - 1
//   E^3  = prod ord_E(phi_k) / (|G| * prod v_i)      (three-folds only)
//
// with |G| the order of the ambient group acting on C^m.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "divcon/cd2.hpp"
#include "divcon/errors.hpp"
#include "divcon/lattice.hpp"
#include "divcon/matrix.hpp"
#include "divcon/quotient.hpp"
#include "divcon/report.hpp"
#include "divcon/sparse_poly.hpp"
#include "divcon/weighted.hpp"

namespace divcon {

struct CIGerm {
    QuotientType ambient;
    std::vector<std::string> vars;
    std::vector<SparsePoly> equations;

    std::size_t dimension() const { return vars.size() - equations.size(); }

    GroupAction action() const {
        std::vector<long long> chars(ambient.weights.begin(), ambient.weights.end());
        return GroupAction(ambient.n, vars, chars);
    }
};

/// Structural checks: arity, variables, origin on every equation, semi-invariance.
inline void require_valid_germ(const CIGerm& g) {
    if (g.vars.size() != g.ambient.arity()) {
        throw PreconditionError("germ has " + std::to_string(g.vars.size()) + " variables but ambient " +
                                g.ambient.str() + " acts on " + std::to_string(g.ambient.arity()));
    }
    if (g.equations.size() > g.vars.size()) {
        throw PreconditionError("more equations than variables");
    }
    const auto action = g.action();
    for (std::size_t k = 0; k < g.equations.size(); ++k) {
        const auto& f = g.equations[k];
        const std::string label = "equation " + std::to_string(k + 1);
        if (f.is_zero()) {
            throw PreconditionError(label + " is zero");
        }
        for (const auto& v : f.used_variables()) {
            if (std::find(g.vars.begin(), g.vars.end(), v) == g.vars.end()) {
                throw PreconditionError(label + " uses unknown variable '" + v + "'");
            }
        }
        if (f.constant_term() != 0) {
            throw PreconditionError(label + " does not vanish at the origin");
        }
        if (!is_semi_invariant(f, action)) {
            throw PreconditionError(label + " is not semi-invariant under " + g.ambient.str());
        }
    }
}

inline WeightAssignment germ_weights(const CIGerm& g, const RationalVector& v) {
    return WeightAssignment(g.vars, v);
}

inline std::vector<Rational> equation_orders(const CIGerm& g, const RationalVector& v) {
    const auto w = germ_weights(g, v);
    std::vector<Rational> out;
    for (const auto& f : g.equations) {
        out.push_back(weighted_order(f, w).value());
    }
    return out;
}

inline Rational discrepancy(const CIGerm& g, const RationalVector& v) {
    Rational a = -1;
    for (const auto& x : v) {
        a += x;
    }
    for (const auto& d : equation_orders(g, v)) {
        a -= d;
    }
    return a;
}

/// Order of the group actually acting: n / gcd(n, a_1, ..., a_m).
inline long long effective_order(const QuotientType& q) {
    long long g = q.n;
    for (auto a : q.weights) {
        g = std::gcd(g, a);
    }
    return q.n / g;
}

inline Rational e_cubed(const CIGerm& g, const RationalVector& v) {
    if (g.dimension() != 3) {
        throw DimensionError("E^3 needs a three-fold germ; this one has dimension " +
                             std::to_string(g.dimension()));
    }
    Rational num = 1;
    for (const auto& d : equation_orders(g, v)) {
        num *= d;
    }
    Rational den = effective_order(g.ambient);
    for (const auto& x : v) {
        den *= x;
    }
    return num / den;
}

/// One term y^e * t^t_exp of a strict transform on a chart; the chart slot
/// of e is always zero and t is the exceptional coordinate.
struct ChartTerm {
    Exponents e;
    Rational t_exp;
    Rational c;
};

/// x_j -> y_j * t^{v_j} (x_i -> t^{v_i}) followed by division by t^ord.
inline std::vector<ChartTerm> strict_transform(const SparsePoly& f, const std::vector<std::string>& vars,
                                               const RationalVector& v, std::size_t chart) {
    const SparsePoly g = f.over(vars);
    const auto w = WeightAssignment(vars, v);
    const Rational ord = weighted_order(g, w).value();
    std::vector<ChartTerm> out;
    for (const auto& [e, c] : g.terms()) {
        ChartTerm t{e, monomial_weight(g, e, w) - ord, c};
        if (t.t_exp < 0) {
            throw Error("strict transform: division by t^ord is not exact");
        }
        t.e[chart] = 0;
        out.push_back(std::move(t));
    }
    // Distinct monomials of f can collide once the chart slot is dropped.
    std::vector<ChartTerm> merged;
    for (auto& t : out) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const ChartTerm& m) { return m.e == t.e && m.t_exp == t.t_exp; });
        if (it == merged.end()) {
            merged.push_back(std::move(t));
        } else {
            it->c += t.c;
        }
    }
    std::erase_if(merged, [](const ChartTerm& t) { return t.c == 0; });
    return merged;
}

inline std::string format_strict_transform(const std::vector<ChartTerm>& terms,
                                           const std::vector<std::string>& vars, std::size_t chart) {
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& t : terms) {
        const Rational mag = t.c < 0 ? Rational(-t.c) : t.c;
        out += out.empty() ? (t.c < 0 ? "-" : "") : (t.c < 0 ? " - " : " + ");
        std::string mono;
        for (std::size_t k = 0; k < t.e.size(); ++k) {
            if (k == chart || t.e[k] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : "*") + vars[k] + (t.e[k] > 1 ? "^" + std::to_string(t.e[k]) : "");
        }
        if (t.t_exp != 0) {
            const std::string ex = is_integral(t.t_exp) ? to_string(t.t_exp) : "(" + to_string(t.t_exp) + ")";
            mono += (mono.empty() ? "" : "*") + std::string("t") + (t.t_exp != 1 ? "^" + ex : "");
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            out += (mag == 1 ? "" : to_string(mag) + "*") + mono;
        }
    }
    return out;
}

enum class FindingKind { Smooth, Absent, Quotient, ManualAnalysisRequired };

inline std::string to_string(FindingKind k) {
    switch (k) {
        case FindingKind::Smooth:
            return "Smooth";
        case FindingKind::Absent:
            return "Absent";
        case FindingKind::Quotient:
            return "Quotient";
        case FindingKind::ManualAnalysisRequired:
            break;
    }
    return "ManualAnalysisRequired";
}

/// What the strict transform looks like at the origin of one chart.
/// Absent: the origin is not on the strict transform.
struct ChartFinding {
    std::size_t chart = 0;
    FindingKind kind = FindingKind::Smooth;
    std::optional<QuotientType> type;        // normalized, for Quotient
    std::vector<std::size_t> eliminated;     // chart coordinates solved for
    std::vector<std::string> transforms;     // strict transforms, human readable
    std::string detail;

    bool is_singular() const {
        return kind == FindingKind::Quotient || kind == FindingKind::ManualAnalysisRequired;
    }
};

inline std::vector<ChartFinding> chart_singularities(const CIGerm& g, const RationalVector& v,
                                                     const ChartReport& groups) {
    const std::size_t m = g.vars.size();
    std::vector<ChartFinding> out;
    for (std::size_t i = 0; i < m; ++i) {
        ChartFinding f;
        f.chart = i;
        std::vector<std::vector<ChartTerm>> transforms;
        for (const auto& eq : g.equations) {
            transforms.push_back(strict_transform(eq, g.vars, v, i));
            f.transforms.push_back(format_strict_transform(transforms.back(), g.vars, i));
        }

        // Constant terms and linear coefficients at the chart origin.
        bool absent = false;
        Matrix<Rational> linear(transforms.size(), m);
        for (std::size_t k = 0; k < transforms.size(); ++k) {
            for (const auto& t : transforms[k]) {
                int deg = 0;
                for (int x : t.e) {
                    deg += x;
                }
                if (deg == 0 && t.t_exp == 0) {
                    absent = true;
                } else if (deg == 1 && t.t_exp == 0) {
                    const auto j = static_cast<std::size_t>(
                        std::find_if(t.e.begin(), t.e.end(), [](int x) { return x != 0; }) - t.e.begin());
                    linear(k, j) += t.c;
                } else if (deg == 0 && t.t_exp == 1) {
                    linear(k, i) += t.c;
                }
            }
        }
        if (absent) {
            f.kind = FindingKind::Absent;
            f.detail = "origin of the chart is not on the strict transform";
            out.push_back(std::move(f));
            continue;
        }
        auto [echelon, pivots] = row_echelon(linear);
        if (pivots.size() < transforms.size()) {
            f.kind = FindingKind::ManualAnalysisRequired;
            f.detail = "linear part at the chart origin has rank " + std::to_string(pivots.size()) + " < " +
                       std::to_string(transforms.size()) + " equations";
            out.push_back(std::move(f));
            continue;
        }
        f.eliminated = pivots;
        std::vector<std::size_t> residual;
        for (std::size_t j = 0; j < m; ++j) {
            if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) {
                residual.push_back(j);
            }
        }
        std::vector<RationalVector> gens;
        for (const auto& factor : groups.charts[i].factors) {
            RationalVector gen;
            for (auto j : residual) {
                gen.push_back(Rational(factor.weights[j], factor.order));
            }
            gens.push_back(std::move(gen));
        }
        const auto residual_group = image_group(gens, residual.size());
        if (residual_group.empty()) {
            f.kind = FindingKind::Smooth;
            f.detail = "trivial group on the remaining coordinates";
        } else if (residual_group.size() == 1) {
            f.kind = FindingKind::Quotient;
            f.type = normalize_quotient_type(residual_group.front().as_quotient_type());
            f.detail = "residual action " + residual_group.front().as_quotient_type().str();
        } else {
            f.kind = FindingKind::ManualAnalysisRequired;
            f.detail = "residual group is not cyclic";
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline std::vector<ChartFinding> chart_singularities(const CIGerm& g, const RationalVector& v) {
    return chart_singularities(g, v, charts(g.ambient, v));
}

struct BlowupReport {
    RationalVector v;
    std::vector<Rational> orders;
    Rational discrepancy;
    std::optional<Rational> e_cubed;  // three-folds only
    ChartReport charts;
    std::vector<ChartFinding> findings;

    /// Charts whose origin is a quotient point with a non-Gorenstein action.
    std::vector<std::size_t> non_gorenstein() const {
        std::vector<std::size_t> out;
        for (const auto& f : findings) {
            if (f.kind == FindingKind::Quotient && f.type && !f.type->is_gorenstein()) {
                out.push_back(f.chart);
            }
        }
        return out;
    }

    std::size_t count(FindingKind k) const {
        return static_cast<std::size_t>(
            std::count_if(findings.begin(), findings.end(), [k](const ChartFinding& f) { return f.kind == k; }));
    }
};

inline BlowupReport blowup(const CIGerm& g, const RationalVector& v) {
    require_valid_germ(g);
    BlowupReport rep;
    rep.v = v;
    rep.charts = charts(g.ambient, v);
    rep.orders = equation_orders(g, v);
    rep.discrepancy = discrepancy(g, v);
    if (g.dimension() == 3) {
        rep.e_cubed = e_cubed(g, v);
    }
    rep.findings = chart_singularities(g, v, rep.charts);
    return rep;
}

inline CIGerm cd2_germ(const CD2Model& m) {
    return CIGerm{QuotientType(2, {1, 1, 1, 0, 0}), cd2_variables(), cd2_equations(m)};
}

/// 1/2r(1, -1, r+4), normalized.
inline QuotientType expected_q_point(int r) {
    return normalize_quotient_type(QuotientType(2LL * r, {1, -1, r + 4}));
}

/// Discrepancy 2, E^3 = 1/r, exactly one singular chart origin and it is the
/// 1/2r(1,-1,r+4) point.  Rejects r outside r >= 7, r = +-1 mod 8 up front.
inline ValidationReport verify_e1_profile(int r, const CD2Model& model) {
    require_cd2_index(r);
    ValidationReport rep;
    rep.add("model r matches", model.r == r, "model r = " + std::to_string(model.r));
    const auto validation = validate(model);
    std::string failed;
    for (const auto& c : validation.checks) {
        if (c.mandatory && !c.passed) {
            failed += (failed.empty() ? "" : "; ") + c.name;
        }
    }
    rep.add("model validates", validation.passed(), failed.empty() ? "all checks pass" : failed);
    if (!rep.passed()) {
        return rep;
    }
    const auto report = blowup(cd2_germ(model), cd2_weight_vector(r));
    rep.add("discrepancy = 2", report.discrepancy == 2, to_string(report.discrepancy));
    rep.add("E^3 = 1/r", report.e_cubed == Rational(1, r), report.e_cubed ? to_string(*report.e_cubed) : "-");
    std::vector<const ChartFinding*> singular;
    for (const auto& f : report.findings) {
        if (f.is_singular()) {
            singular.push_back(&f);
        }
    }
    rep.add("exactly one singular chart origin", singular.size() == 1,
            std::to_string(singular.size()) + " singular chart origins");
    const auto expected = expected_q_point(r);
    const bool matches = singular.size() == 1 && singular.front()->type == expected;
    rep.add("singular point is 1/2r(1,-1,r+4)", matches,
            singular.size() == 1 && singular.front()->type ? singular.front()->type->str() + " vs " + expected.str()
                                                           : "expected " + expected.str());
    rep.add("no ManualAnalysisRequired", report.count(FindingKind::ManualAnalysisRequired) == 0,
            std::to_string(report.count(FindingKind::ManualAnalysisRequired)) + " charts");
    return rep;
}

}  // namespace divcon
