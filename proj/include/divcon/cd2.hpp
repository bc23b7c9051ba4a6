#pragma once

// The cD/2 model with discrepancy 2:
//
//   x1^2 + x4*x5 + p(x2, x3, x4) = 0
//   x2^2 + q(x1, x3, x4) + x5   = 0      in C^5 / 1/2(1,1,1,0,0),
//
// weights ((r+1)/2, (r-1)/2, 2, 1, r), r >= 7, r = +-1 mod 8, p of weighted
// order > r, q weighted homogeneous of weight r-1 and not (x3*s(x3^2,x4))^2.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/poly_text.hpp"
#include "divcon/report.hpp"
#include "divcon/sparse_poly.hpp"
#include "divcon/square_form.hpp"
#include "divcon/weighted.hpp"

namespace divcon {

inline const std::vector<std::string>& cd2_variables() {
    static const std::vector<std::string> vars{"x1", "x2", "x3", "x4", "x5"};
    return vars;
}

inline const std::vector<std::string>& cd2_germ_variables() {
    static const std::vector<std::string> vars{"x1", "x2", "x3", "x4"};
    return vars;
}

inline bool is_cd2_index(int r) { return r >= 7 && (r % 8 == 1 || r % 8 == 7); }

inline void require_cd2_index(int r) {
    if (!is_cd2_index(r)) {
        throw PreconditionError("r must satisfy r >= 7 and r = +-1 mod 8, got " + std::to_string(r));
    }
}

/// wt(x1..x5) = ((r+1)/2, (r-1)/2, 2, 1, r).  Needs r >= 3 for positivity.
inline WeightAssignment cd2_weights(int r) {
    return WeightAssignment({{"x1", Rational(r + 1, 2)},
                             {"x2", Rational(r - 1, 2)},
                             {"x3", Rational(2)},
                             {"x4", Rational(1)},
                             {"x5", Rational(r)}});
}

inline std::vector<Rational> cd2_weight_vector(int r) {
    return {Rational(r + 1, 2), Rational(r - 1, 2), Rational(2), Rational(1), Rational(r)};
}

/// The involution 1/2(1,1,1,0,0).
inline GroupAction cd2_action() {
    return GroupAction(2, {{"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", 0}, {"x5", 0}});
}

struct CD2Model {
    int r = 7;
    SparsePoly p;  // in x2, x3, x4
    SparsePoly q;  // in x1, x3, x4
};

using Monomial = std::vector<std::pair<std::string, int>>;

inline std::string format_monomial(const Monomial& m) {
    return format_polynomial(SparsePoly::monomial(m));
}

/// Monomial forced into p: x2*x3^((r+3)/4) for r = 1 mod 8, x3^((r+1)/2) for r = 7 mod 8.
inline Monomial residue_p_monomial(int r) {
    require_cd2_index(r);
    if (r % 8 == 1) {
        return {{"x2", 1}, {"x3", (r + 3) / 4}};
    }
    return {{"x3", (r + 1) / 2}};
}

/// Monomial forced into q: x3^((r-1)/2) for r = 1 mod 8, x1*x3^((r-3)/4) for r = 7 mod 8.
inline Monomial residue_q_monomial(int r) {
    require_cd2_index(r);
    if (r % 8 == 1) {
        return {{"x3", (r - 1) / 2}};
    }
    return {{"x1", 1}, {"x3", (r - 3) / 4}};
}

struct ResidueMonomialReport {
    int residue = 0;  // r mod 8, 1 or 7
    Monomial p_monomial;
    Monomial q_monomial;
    bool p_present = false;
    bool q_present = false;

    bool passed() const { return p_present && q_present; }
};

inline ResidueMonomialReport remark_check(const CD2Model& m) {
    require_cd2_index(m.r);
    ResidueMonomialReport rep;
    rep.residue = m.r % 8;
    rep.p_monomial = residue_p_monomial(m.r);
    rep.q_monomial = residue_q_monomial(m.r);
    rep.p_present = m.p.coefficient(rep.p_monomial) != 0;
    rep.q_present = m.q.coefficient(rep.q_monomial) != 0;
    return rep;
}

namespace detail {

inline bool uses_only(const SparsePoly& f, const std::vector<std::string>& allowed) {
    for (const auto& v : f.used_variables()) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Runs every model condition as a named check.  "x4^(r-1) in q" is advisory:
/// without it the x4-chart of the blow-up carries an extra index-2 point.
inline ValidationReport validate(const CD2Model& m, bool strict_remark = false) {
    ValidationReport rep;
    const int r = m.r;
    rep.add("r >= 7", r >= 7, "r = " + std::to_string(r));
    rep.add("r = +-1 mod 8", r % 8 == 1 || r % 8 == 7,
            "r mod 8 = " + std::to_string(((r % 8) + 8) % 8));

    const bool p_vars = detail::uses_only(m.p, {"x2", "x3", "x4"});
    const bool q_vars = detail::uses_only(m.q, {"x1", "x3", "x4"});
    rep.add("p in x2,x3,x4", p_vars, format_polynomial(m.p));
    rep.add("q in x1,x3,x4", q_vars, format_polynomial(m.q));

    if (r >= 3) {
        const auto w = cd2_weights(r);
        if (p_vars) {
            const auto ord = weighted_order(m.p, w);
            rep.add("p weighted order > r", ord > WeightedOrder(Rational(r)), "ord p = " + ord.str());
        } else {
            rep.add("p weighted order > r", false, "p uses foreign variables");
        }
        if (q_vars) {
            const bool homog = !m.q.is_zero() && is_weighted_homogeneous(m.q, w, Rational(r - 1));
            rep.add("q weighted homogeneous of weight r-1", homog,
                    m.q.is_zero() ? "q = 0" : "ord q = " + weighted_order(m.q, w).str());
        } else {
            rep.add("q weighted homogeneous of weight r-1", false, "q uses foreign variables");
        }
    } else {
        rep.add("p weighted order > r", false, "weights undefined for r < 3");
        rep.add("q weighted homogeneous of weight r-1", false, "weights undefined for r < 3");
    }

    const auto g = cd2_action();
    const auto chi_p = p_vars ? is_semi_invariant(m.p, g) : std::nullopt;
    const auto chi_q = q_vars ? is_semi_invariant(m.q, g) : std::nullopt;
    rep.add("p invariant under 1/2(1,1,1,0,0)", chi_p == 0LL,
            chi_p ? "character " + std::to_string(*chi_p) : "mixed characters");
    rep.add("q invariant under 1/2(1,1,1,0,0)", chi_q == 0LL,
            chi_q ? "character " + std::to_string(*chi_q) : "mixed characters");

    const auto sq = square_form_detect(m.q);
    rep.add("q not of form (x3*s(x3^2,x4))^2", !sq.has_value(),
            sq ? "q = " + to_string(sq->scale) + "*(x3*(" + format_polynomial(sq->s) + "))^2"
               : "no square root of that shape");

    if (r >= 1) {
        const Monomial top{{"x4", r - 1}};
        rep.add("x4^(r-1) in q", m.q.coefficient(top) != 0,
                "coefficient " + to_string(m.q.coefficient(top)), false);
    }

    if (strict_remark) {
        if (is_cd2_index(r)) {
            const auto rem = remark_check(m);
            rep.add("residue monomial in p", rem.p_present, format_monomial(rem.p_monomial));
            rep.add("residue monomial in q", rem.q_present, format_monomial(rem.q_monomial));
        } else {
            rep.add("residue monomial in p", false, "r is not +-1 mod 8");
            rep.add("residue monomial in q", false, "r is not +-1 mod 8");
        }
    }
    return rep;
}

/// x1^2 + x4*x5 + p and x2^2 + q + x5, over x1..x5.
inline std::vector<SparsePoly> cd2_equations(const CD2Model& m) {
    const auto& vars = cd2_variables();
    const SparsePoly x1 = SparsePoly::variable("x1");
    const SparsePoly x2 = SparsePoly::variable("x2");
    const SparsePoly x4 = SparsePoly::variable("x4");
    const SparsePoly x5 = SparsePoly::variable("x5");
    return {(x1 * x1 + x4 * x5 + m.p).over(vars), (x2 * x2 + m.q + x5).over(vars)};
}

/// phi = x1^2 - x4*(x2^2 + q) + p over x1..x4, from x5 = -(x2^2 + q).
inline SparsePoly eliminate_x5(const CD2Model& m) {
    const auto eqs = cd2_equations(m);
    const SparsePoly x2 = SparsePoly::variable("x2");
    const SparsePoly x5_value = -(x2 * x2 + m.q);
    return substitute(eqs[0], "x5", x5_value).over(cd2_germ_variables());
}

/// psi = x2^2 + q.
inline SparsePoly cd2_psi(const CD2Model& m) {
    const SparsePoly x2 = SparsePoly::variable("x2");
    return (x2 * x2 + m.q).over(cd2_germ_variables());
}

struct GenerateOptions {
    bool include_residue_monomials = true;
    bool include_x4_power = true;  // x4^(r-1) in q
};

namespace detail {

/// Small nonzero rational: sign, numerator and denominator from 1..9.
inline Rational sample_coefficient(std::mt19937_64& rng) {
    const long long num = 1 + static_cast<long long>(rng() % 9);
    const long long den = 1 + static_cast<long long>(rng() % 9);
    return Rational(rng() % 2 == 0 ? num : -num, den);
}

/// Exponent vectors (a, b, c) with wa*a + wb*b + c in [lo, hi], a + b even.
inline std::vector<Exponents> even_monomials(long long wa, long long wb, long long lo, long long hi,
                                             int max_a) {
    std::vector<Exponents> out;
    for (long long a = 0; a <= max_a && wa * a <= hi; ++a) {
        for (long long b = 0; wa * a + wb * b <= hi; ++b) {
            if ((a + b) % 2 != 0) {
                continue;
            }
            const long long base = wa * a + wb * b;
            for (long long c = std::max(0LL, lo - base); base + c <= hi; ++c) {
                out.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)});
            }
        }
    }
    return out;
}

}  // namespace detail

/// Samples a model.  The generator is std::mt19937_64 seeded with `seed`;
/// integers in [0, k) are taken as raw output mod k.  q draws weight-(r-1)
/// even monomials in (x1, x3, x4), p draws even monomials in (x2, x3, x4) of
/// weight in (r, r + extra_degree]; each optional monomial is kept with
/// probability 1/3 and gets a coefficient +-a/b, a, b in 1..9.
inline CD2Model generate(int r, std::uint64_t seed, int extra_degree, GenerateOptions opts = {}) {
    require_cd2_index(r);
    if (extra_degree < 1) {
        throw PreconditionError("extra_degree must be >= 1");
    }
    std::mt19937_64 rng(seed);
    const long long w1 = (r + 1) / 2;
    const long long w2 = (r - 1) / 2;

    // (x1, x3, x4) and (x2, x3, x4) exponent layouts.
    const auto q_monos = detail::even_monomials(w1, 2, r - 1, r - 1, 1);
    const auto p_monos = detail::even_monomials(w2, 2, r + 1, r + extra_degree, r + extra_degree);
    const std::vector<std::string> q_vars{"x1", "x3", "x4"};
    const std::vector<std::string> p_vars{"x2", "x3", "x4"};

    auto as_exponents = [](const Monomial& m, const std::vector<std::string>& vars) {
        Exponents e(vars.size(), 0);
        for (const auto& [name, k] : m) {
            e[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), name) - vars.begin())] += k;
        }
        return e;
    };

    std::vector<Exponents> q_required;
    std::vector<Exponents> p_required;
    if (opts.include_residue_monomials) {
        q_required.push_back(as_exponents(residue_q_monomial(r), q_vars));
        p_required.push_back(as_exponents(residue_p_monomial(r), p_vars));
    }
    if (opts.include_x4_power) {
        q_required.push_back({0, 0, r - 1});
    }

    for (int attempt = 0; attempt < 1000; ++attempt) {
        SparsePoly q(q_vars);
        for (const auto& e : q_monos) {
            const bool required = std::find(q_required.begin(), q_required.end(), e) != q_required.end();
            if (required || rng() % 3 == 0) {
                q.add_term(e, detail::sample_coefficient(rng));
            }
        }
        SparsePoly p(p_vars);
        for (const auto& e : p_monos) {
            const bool required = std::find(p_required.begin(), p_required.end(), e) != p_required.end();
            if (required || rng() % 3 == 0) {
                p.add_term(e, detail::sample_coefficient(rng));
            }
        }
        if (q.is_zero() || square_form_detect(q)) {
            continue;
        }
        return CD2Model{r, std::move(p), std::move(q)};
    }
    throw Error("generate: no admissible q found for r = " + std::to_string(r));
}

enum class NormalFormKind { A, B, Unrecognized };

inline std::string to_string(NormalFormKind k) {
    switch (k) {
        case NormalFormKind::A:
            return "A";
        case NormalFormKind::B:
            return "B";
        case NormalFormKind::Unrecognized:
            break;
    }
    return "Unrecognized";
}

/// x1^2 + x2*x3*x4 + x2^(2 alpha) + x3^(2 beta) + x4^gamma, up to scaling.
struct NormalFormA {
    int alpha = 0;
    int beta = 0;
    int gamma = 0;
};

/// x1^2 + x2^2*x4 + lambda*x2*x3^(2 alpha - 1) + g(x3^2, x4), g in (u^2, u*x4^2, x4^3).
struct NormalFormB {
    Rational lambda = 0;
    std::optional<int> alpha;  // only defined with a lambda term
    SparsePoly g;              // in u = x3^2 and x4
    WeightedOrder g_order_on_x4_axis = WeightedOrder::infinity();  // ord g(0, x4)
};

struct NormalFormResult {
    NormalFormKind kind = NormalFormKind::Unrecognized;
    std::optional<NormalFormA> a;
    std::optional<NormalFormB> b;
    bool elephant = false;  // gamma >= r in (A), ord g(0,x4) >= r in (B)
    std::string reason;
};

namespace detail {

inline std::optional<NormalFormA> match_form_a(const SparsePoly& phi) {
    // phi is over (x1, x2, x3, x4) with x1^2 monic.
    if (phi.size() != 5) {
        return std::nullopt;
    }
    bool cross = false;
    NormalFormA out;
    for (const auto& [e, _] : phi.terms()) {
        const std::array<int, 4> x{e[0], e[1], e[2], e[3]};
        if (x == std::array<int, 4>{2, 0, 0, 0}) {
            continue;
        }
        if (x == std::array<int, 4>{0, 1, 1, 1}) {
            cross = true;
        } else if (x[0] == 0 && x[2] == 0 && x[3] == 0 && x[1] >= 4 && x[1] % 2 == 0) {
            out.alpha = x[1] / 2;
        } else if (x[0] == 0 && x[1] == 0 && x[3] == 0 && x[2] >= 4 && x[2] % 2 == 0) {
            out.beta = x[2] / 2;
        } else if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] >= 3) {
            out.gamma = x[3];
        } else {
            return std::nullopt;
        }
    }
    if (!cross || out.alpha == 0 || out.beta == 0 || out.gamma == 0) {
        return std::nullopt;
    }
    return out;
}

inline std::optional<NormalFormB> match_form_b(const SparsePoly& phi, std::string& why) {
    const Rational d = phi.coefficient({{"x2", 2}, {"x4", 1}});
    if (d == 0) {
        why = "no x2^2*x4 term";
        return std::nullopt;
    }
    NormalFormB out;
    out.g = SparsePoly({"u", "x4"});
    for (const auto& [e, c] : phi.terms()) {
        const std::array<int, 4> x{e[0], e[1], e[2], e[3]};
        if (x == std::array<int, 4>{2, 0, 0, 0} || x == std::array<int, 4>{0, 2, 0, 1}) {
            continue;
        }
        if (x[0] == 0 && x[1] == 1 && x[3] == 0 && x[2] >= 3 && x[2] % 2 == 1) {
            if (out.alpha) {
                why = "two x2*x3^odd terms";
                return std::nullopt;
            }
            out.alpha = (x[2] + 1) / 2;
            out.lambda = c;
            continue;
        }
        if (x[0] == 0 && x[1] == 0 && x[2] % 2 == 0) {
            const int u = x[2] / 2;
            const int t = x[3];
            if (!(u >= 2 || (u >= 1 && t >= 2) || t >= 3)) {
                why = "term " + format_polynomial(SparsePoly::monomial({{"x3", x[2]}, {"x4", t}})) +
                      " outside (x3^4, x3^2*x4^2, x4^3)";
                return std::nullopt;
            }
            // x4 -> x4 / d makes the x2^2*x4 coefficient 1.
            Rational scale = 1;
            for (int k = 0; k < t; ++k) {
                scale /= d;
            }
            out.g.add_term({u, t}, c * scale);
            continue;
        }
        why = "term " +
              format_polynomial(SparsePoly::monomial({{"x1", x[0]}, {"x2", x[1]}, {"x3", x[2]}, {"x4", x[3]}})) +
              " does not fit form B";
        return std::nullopt;
    }
    std::optional<int> axis;
    for (const auto& [e, _] : out.g.terms()) {
        if (e[0] == 0 && (!axis || e[1] < *axis)) {
            axis = e[1];
        }
    }
    out.g_order_on_x4_axis = axis ? WeightedOrder(Rational(*axis)) : WeightedOrder::infinity();
    return out;
}

}  // namespace detail

/// Recognizes germs already in shape (A) or (B) and evaluates the elephant
/// condition for r.  No coordinate changes beyond scaling are attempted.
inline NormalFormResult classify_normal_form(const SparsePoly& phi_in, int r) {
    NormalFormResult res;
    const auto& vars = cd2_germ_variables();
    if (!detail::uses_only(phi_in, vars)) {
        res.reason = "germ uses variables outside x1..x4";
        return res;
    }
    const GroupAction g(2, {{"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", 0}});
    if (!is_semi_invariant(phi_in, g)) {
        res.reason = "not semi-invariant under 1/2(1,1,1,0)";
        return res;
    }
    SparsePoly phi = phi_in.over(vars);
    const Rational c11 = phi.coefficient({{"x1", 2}});
    if (c11 == 0) {
        res.reason = "no x1^2 term";
        return res;
    }
    phi *= Rational(1) / c11;
    if (auto a = detail::match_form_a(phi)) {
        res.kind = NormalFormKind::A;
        res.elephant = a->gamma >= r;
        res.a = *a;
        return res;
    }
    std::string why;
    if (auto b = detail::match_form_b(phi, why)) {
        res.kind = NormalFormKind::B;
        res.elephant = b->g_order_on_x4_axis >= WeightedOrder(Rational(r));
        res.b = std::move(*b);
        return res;
    }
    res.reason = why;
    return res;
}

}  // namespace divcon
