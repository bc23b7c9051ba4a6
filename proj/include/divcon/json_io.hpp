#pragma once

// JSON forms.  Rationals are always "p/q" strings (or "p"), never numbers.
//
//   polynomial   {"vars":["x1",...],"terms":[{"c":"-1/2","e":[0,2,0,1,0]},...]}
//   CD2 model    {"r":7,"p":<polynomial>,"q":<polynomial>}
//   germ         {"ambient":"1/2(1,1,1,0,0)","vars":[...],"weights":["4",...],
//                 "equations":[<polynomial>,...]}
//   dimensions   {"r":7,"dims":[{"i":0,"j":0,"dim":1},...]}

#include <string>
#include <vector>

#include <json.hpp>

#include "divcon/blowup.hpp"
#include "divcon/cd2.hpp"
#include "divcon/errors.hpp"
#include "divcon/graded_dim.hpp"
#include "divcon/lattice.hpp"
#include "divcon/quotient.hpp"
#include "divcon/report.hpp"
#include "divcon/sparse_poly.hpp"

namespace divcon {

using Json = nlohmann::json;

namespace detail {

inline const Json& require_field(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(what + ": missing field '" + key + "'");
    }
    return j.at(key);
}

inline Rational rational_field(const Json& j, const std::string& what) {
    if (!j.is_string()) {
        throw ParseError(what + ": rationals are written as \"p/q\" strings");
    }
    return parse_rational(j.get<std::string>());
}

}  // namespace detail

inline Json to_json(const SparsePoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        terms.push_back({{"c", to_string(c)}, {"e", e}});
    }
    return {{"vars", p.variables()}, {"terms", terms}};
}

inline SparsePoly polynomial_from_json(const Json& j) {
    const auto& vars = detail::require_field(j, "vars", "polynomial");
    const auto& terms = detail::require_field(j, "terms", "polynomial");
    if (!vars.is_array() || !terms.is_array()) {
        throw ParseError("polynomial: 'vars' and 'terms' must be arrays");
    }
    std::vector<std::string> names;
    for (const auto& v : vars) {
        if (!v.is_string()) {
            throw ParseError("polynomial: variable names must be strings");
        }
        names.push_back(v.get<std::string>());
    }
    SparsePoly p = [&] {
        try {
            return SparsePoly(names);
        } catch (const Error& e) {
            throw ParseError(std::string("polynomial: ") + e.what());
        }
    }();
    for (const auto& t : terms) {
        const Rational c = detail::rational_field(detail::require_field(t, "c", "term"), "term coefficient");
        const auto& e = detail::require_field(t, "e", "term");
        if (!e.is_array() || e.size() != names.size()) {
            throw ParseError("term: exponent vector must have one entry per variable");
        }
        Exponents ex;
        for (const auto& x : e) {
            if (!x.is_number_integer() || x.get<long long>() < 0) {
                throw ParseError("term: exponents must be non-negative integers");
            }
            ex.push_back(x.get<int>());
        }
        p.add_term(std::move(ex), c);
    }
    return p;
}

inline Json to_json(const CD2Model& m) { return {{"r", m.r}, {"p", to_json(m.p)}, {"q", to_json(m.q)}}; }

inline CD2Model cd2_model_from_json(const Json& j) {
    const auto& r = detail::require_field(j, "r", "model");
    if (!r.is_number_integer()) {
        throw ParseError("model: 'r' must be an integer");
    }
    return CD2Model{r.get<int>(), polynomial_from_json(detail::require_field(j, "p", "model")),
                    polynomial_from_json(detail::require_field(j, "q", "model"))};
}

/// A germ together with the weight vector it is blown up with.
struct GermSpec {
    CIGerm germ;
    RationalVector weights;
};

inline Json to_json(const GermSpec& s) {
    Json weights = Json::array();
    for (const auto& w : s.weights) {
        weights.push_back(to_string(w));
    }
    Json eqs = Json::array();
    for (const auto& f : s.germ.equations) {
        eqs.push_back(to_json(f));
    }
    return {{"ambient", s.germ.ambient.str()}, {"vars", s.germ.vars}, {"weights", weights}, {"equations", eqs}};
}

inline GermSpec germ_from_json(const Json& j) {
    GermSpec s;
    const auto& amb = detail::require_field(j, "ambient", "germ");
    if (!amb.is_string()) {
        throw ParseError("germ: 'ambient' must be a string like \"1/2(1,1,1,0,0)\"");
    }
    s.germ.ambient = parse_quotient_type(amb.get<std::string>());
    const auto& vars = detail::require_field(j, "vars", "germ");
    if (!vars.is_array()) {
        throw ParseError("germ: 'vars' must be an array");
    }
    for (const auto& v : vars) {
        if (!v.is_string()) {
            throw ParseError("germ: variable names must be strings");
        }
        s.germ.vars.push_back(v.get<std::string>());
    }
    const auto& weights = detail::require_field(j, "weights", "germ");
    if (!weights.is_array() || weights.size() != s.germ.vars.size()) {
        throw ParseError("germ: 'weights' must list one rational per variable");
    }
    for (const auto& w : weights) {
        s.weights.push_back(detail::rational_field(w, "germ weight"));
    }
    const auto& eqs = detail::require_field(j, "equations", "germ");
    if (!eqs.is_array()) {
        throw ParseError("germ: 'equations' must be an array");
    }
    for (const auto& e : eqs) {
        s.germ.equations.push_back(polynomial_from_json(e));
    }
    return s;
}

inline Json to_json(const DimensionTable& t) {
    Json dims = Json::array();
    for (const auto& [key, d] : t.rows()) {
        dims.push_back({{"i", key.first}, {"j", key.second}, {"dim", d}});
    }
    return {{"r", t.r()}, {"dims", dims}};
}

inline DimensionTable dimension_table_from_json(const Json& j) {
    const int r = detail::require_field(j, "r", "dimension table").get<int>();
    const auto& dims = detail::require_field(j, "dims", "dimension table");
    long i_max = -1;
    for (const auto& d : dims) {
        i_max = std::max(i_max, detail::require_field(d, "i", "dimension row").get<long>());
    }
    DimensionTable table(r, std::max(i_max, 0L));
    for (const auto& d : dims) {
        const long i = d.at("i").get<long>();
        const int jj = detail::require_field(d, "j", "dimension row").get<int>();
        if (table.at(i, jj) != detail::require_field(d, "dim", "dimension row").get<std::size_t>()) {
            throw ParseError("dimension table: entry (" + std::to_string(i) + "," + std::to_string(jj) +
                             ") disagrees with the lattice count");
        }
    }
    return table;
}

inline Json to_json(const NiPoint& p) {
    return {{"l", std::vector<int>{p.l1, p.l2, p.l3, p.l4, p.l5}}, {"parity", p.parity()}};
}

inline Json to_json(const QuotientType& q) { return q.str(); }

inline Json to_json(const CyclicFactor& f) { return {{"order", f.order}, {"weights", f.weights}}; }

inline Json rational_array(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) {
        out.push_back(to_string(x));
    }
    return out;
}

inline Json to_json(const ChartReport& rep, const std::vector<std::string>& names = {}) {
    Json charts = Json::array();
    for (const auto& c : rep.charts) {
        Json factors = Json::array();
        for (const auto& f : c.factors) {
            factors.push_back(to_json(f));
        }
        Json entry{{"coordinate", names.empty() ? Json(c.coordinate) : Json(names[c.coordinate])},
                   {"order", c.order()},
                   {"factors", factors}};
        if (auto t = c.cyclic_type(rep.ambient.arity())) {
            entry["type"] = t->str();
        }
        charts.push_back(entry);
    }
    return {{"ambient", rep.ambient.str()}, {"weights", rational_array(rep.v)}, {"charts", charts}};
}

inline Json to_json(const ChartFinding& f, const std::vector<std::string>& names) {
    Json elim = Json::array();
    for (auto k : f.eliminated) {
        elim.push_back(k == f.chart ? std::string("t") : names[k]);
    }
    Json out{{"chart", names[f.chart]},
             {"finding", to_string(f.kind)},
             {"eliminated", elim},
             {"strict_transforms", f.transforms},
             {"detail", f.detail}};
    if (f.type) {
        out["type"] = f.type->str();
    }
    return out;
}

inline Json to_json(const BlowupReport& rep, const std::vector<std::string>& names) {
    Json findings = Json::array();
    for (const auto& f : rep.findings) {
        findings.push_back(to_json(f, names));
    }
    Json non_gor = Json::array();
    for (auto k : rep.non_gorenstein()) {
        non_gor.push_back(names[k]);
    }
    Json out{{"weights", rational_array(rep.v)},
             {"orders", rational_array(rep.orders)},
             {"discrepancy", to_string(rep.discrepancy)},
             {"findings", findings},
             {"groups", to_json(rep.charts, names)},
             {"non_gorenstein", non_gor}};
    out["e3"] = rep.e_cubed ? Json(to_string(*rep.e_cubed)) : Json(nullptr);
    return out;
}

inline Json to_json(const ValidationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"mandatory", c.mandatory}});
    }
    return {{"passed", rep.passed()}, {"checks", checks}};
}

}  // namespace divcon
