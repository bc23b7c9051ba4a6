#pragma once

// Command-line front end.  run() takes the arguments after the program name
// and returns the exit code plus what would go to stdout and stderr:
// 0 = verified, 1 = verification failure, 2 = input error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "divcon/blowup.hpp"
#include "divcon/cd2.hpp"
#include "divcon/graded_dim.hpp"
#include "divcon/json_io.hpp"
#include "divcon/lattice.hpp"
#include "divcon/quotient.hpp"

namespace divcon::cli {

struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Left-aligned columns separated by two spaces.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string render() const {
        std::vector<std::size_t> width;
        for (const auto& row : rows_) {
            width.resize(std::max(width.size(), row.size()), 0);
            for (std::size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        std::ostringstream os;
        for (const auto& row : rows_) {
            std::string line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                line += row[c];
                if (c + 1 < row.size()) {
                    line += std::string(width[c] - row[c].size() + 2, ' ');
                }
            }
            os << line << "\n";
        }
        return os.str();
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

namespace detail {

class InputError : public Error {
public:
    using Error::Error;
};

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::string render_report(const ValidationReport& rep) {
    TextTable t({"check", "result", "detail"});
    for (const auto& c : rep.checks) {
        t.add({c.name, c.passed ? "pass" : (c.mandatory ? "FAIL" : "warn"), c.detail});
    }
    return t.render() + (rep.passed() ? "overall: pass\n" : "overall: FAIL\n");
}

inline RationalVector parse_weight_list(const std::string& text) {
    RationalVector out;
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline unsigned default_threads() {
    if (const char* env = std::getenv("DIVCON_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) {
                return static_cast<unsigned>(n);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

inline std::string chart_name(const std::vector<std::string>& names, std::size_t k) {
    return k < names.size() ? names[k] : std::to_string(k);
}

}  // namespace detail

struct Options {
    std::string format = "table";
    int r = 0;
    long i = 0;
    int parity = -1;
    long i_max = -1;
    unsigned threads = 0;
    std::string type;
    std::string ambient;
    std::string weights;
    std::string model;
    bool strict_remark = false;
    std::uint64_t seed = 0;
    int extra = 2;
    std::string out_path;
};

inline CommandResult cmd_ni(const Options& o) {
    const auto pts = o.parity < 0 ? enumerate_ni(o.r, o.i) : enumerate_ni(o.r, o.i, o.parity);
    CommandResult res;
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& p : pts) {
            arr.push_back(to_json(p));
        }
        Json j{{"r", o.r}, {"i", o.i}, {"count", pts.size()}, {"points", arr}};
        if (o.parity >= 0) {
            j["parity"] = o.parity;
        }
        res.out = j.dump(2) + "\n";
    } else {
        TextTable t({"l1", "l2", "l3", "l4", "l5", "parity"});
        for (const auto& p : pts) {
            t.add({std::to_string(p.l1), std::to_string(p.l2), std::to_string(p.l3), std::to_string(p.l4),
                   std::to_string(p.l5), std::to_string(p.parity())});
        }
        res.out = t.render() + std::to_string(pts.size()) + " points\n";
    }
    return res;
}

inline CommandResult cmd_dims(const Options& o) {
    if (o.i_max < 0) {
        throw PreconditionError("--imax must be non-negative");
    }
    const DimensionTable table(o.r, o.i_max);
    CommandResult res;
    if (o.format == "json") {
        res.out = to_json(table).dump(2) + "\n";
    } else {
        TextTable t({"i", "dim V_i^0", "dim V_i^1"});
        for (long i = 0; i <= o.i_max; ++i) {
            t.add({std::to_string(i), std::to_string(table.at(i, 0)), std::to_string(table.at(i, 1))});
        }
        res.out = t.render();
    }
    return res;
}

inline CommandResult cmd_verify_dim(const Options& o) {
    require_graded_r(o.r);
    if (o.i_max < 2L * o.r) {
        throw PreconditionError("--imax must be at least 2r = " + std::to_string(2 * o.r));
    }
    // Decomposition checks fan out over contiguous i-ranges.
    const unsigned threads = std::max(1U, std::min<unsigned>(o.threads ? o.threads : detail::default_threads(),
                                                             static_cast<unsigned>(o.i_max + 1)));
    const long chunk = (o.i_max + 1 + threads - 1) / threads;
    std::vector<std::future<std::vector<std::pair<long, int>>>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
        const long lo = t * chunk;
        const long hi = std::min(o.i_max, lo + chunk - 1);
        jobs.push_back(std::async(std::launch::async, [r = o.r, lo, hi] {
            std::vector<std::pair<long, int>> bad;
            for (long i = lo; i <= hi; ++i) {
                for (int j = 0; j <= 1; ++j) {
                    if (!check_decomposition(r, i, j)) {
                        bad.emplace_back(i, j);
                    }
                }
            }
            return bad;
        }));
    }
    std::vector<std::pair<long, int>> failures;
    for (auto& job : jobs) {
        auto part = job.get();
        failures.insert(failures.end(), part.begin(), part.end());
    }

    ValidationReport rep;
    std::string where;
    for (const auto& [i, j] : failures) {
        where += (where.empty() ? "" : ", ") + std::string("(") + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    rep.add("set decomposition", failures.empty(),
            failures.empty() ? "all (i,j), 0 <= i <= " + std::to_string(o.i_max) : "fails at " + where);

    std::optional<DeltaProfile> profile;
    try {
        profile = delta_profile(o.r, o.i_max);
        rep.add("delta well-defined mod 2r", true, std::to_string(profile->values().size()) + " residues");
    } catch (const WellDefinednessError& e) {
        rep.add("delta well-defined mod 2r", false, e.what());
    }
    std::map<int, Rational> b;
    if (profile) {
        const Rational s0 = profile->orbit_sum(0);
        const Rational s1 = profile->orbit_sum(1);
        rep.add("even orbit sum = 0", s0 == 0, to_string(s0));
        rep.add("odd orbit sum = 0", s1 == 0, to_string(s1));
        try {
            b = solve_b(*profile);
            rep.add("B reconstructed", true, "B(0) = B(1) = 0");
        } catch (const Error& e) {
            rep.add("B reconstructed", false, e.what());
        }
    }

    CommandResult res;
    res.exit_code = rep.passed() ? 0 : 1;
    if (o.format == "json") {
        Json j = to_json(rep);
        j["r"] = o.r;
        j["imax"] = o.i_max;
        if (profile) {
            Json delta = Json::object();
            for (const auto& [k, d] : profile->values()) {
                delta[std::to_string(k)] = to_string(d);
            }
            j["delta"] = delta;
        }
        Json bj = Json::object();
        for (const auto& [k, x] : b) {
            bj[std::to_string(k)] = to_string(x);
        }
        j["B"] = bj;
        res.out = j.dump(2) + "\n";
    } else {
        res.out = detail::render_report(rep);
        if (profile && !b.empty()) {
            TextTable t({"k mod 2r", "B(k+2)-B(k)", "B(k)"});
            for (const auto& [k, d] : profile->values()) {
                t.add({std::to_string(k), to_string(d), to_string(b.at(k))});
            }
            res.out += "\n" + t.render();
        }
    }
    return res;
}

inline CommandResult cmd_terminal(const Options& o) {
    const QuotientType q = parse_quotient_type(o.type);
    const bool terminal = reid_tai_is_terminal(q);
    const bool canonical = reid_tai_is_canonical(q);
    std::optional<std::pair<long long, Rational>> worst;
    for (long long k = 1; k < q.n; ++k) {
        const Rational a = age(q, k);
        if (!worst || a < worst->second) {
            worst = {k, a};
        }
    }
    CommandResult res;
    res.exit_code = terminal ? 0 : 1;
    if (o.format == "json") {
        Json j{{"type", q.str()},
               {"normalized", normalize_quotient_type(q).str()},
               {"terminal", terminal},
               {"canonical", canonical}};
        if (worst) {
            j["min_age"] = {{"k", worst->first}, {"age", to_string(worst->second)}};
        }
        res.out = j.dump(2) + "\n";
    } else {
        res.out = q.str() + ": " + (terminal ? "terminal" : "not terminal") + (canonical ? ", canonical" : "") +
                  (worst ? " (min age " + to_string(worst->second) + " at k=" + std::to_string(worst->first) + ")" : "") +
                  "\n";
    }
    return res;
}

inline std::string render_charts(const ChartReport& rep, const std::vector<std::string>& names) {
    TextTable t({"chart", "order", "group"});
    for (const auto& c : rep.charts) {
        std::string group;
        for (const auto& f : c.factors) {
            group += (group.empty() ? "" : " x ") + f.as_quotient_type().str();
        }
        t.add({detail::chart_name(names, c.coordinate), std::to_string(c.order()), group.empty() ? "trivial" : group});
    }
    return t.render();
}

inline CommandResult cmd_charts(const Options& o) {
    const QuotientType ambient = parse_quotient_type(o.ambient);
    const RationalVector v = detail::parse_weight_list(o.weights);
    const ChartReport rep = charts(ambient, v);
    CommandResult res;
    res.out = o.format == "json" ? to_json(rep).dump(2) + "\n"
                                 : "ambient " + ambient.str() + ", v = " + format_vector(v) + "\n" + render_charts(rep, {});
    return res;
}

inline std::string render_blowup(const BlowupReport& rep, const std::vector<std::string>& names) {
    std::string orders;
    for (const auto& d : rep.orders) {
        orders += (orders.empty() ? "" : ", ") + to_string(d);
    }
    std::ostringstream os;
    os << "weights      " << format_vector(rep.v) << "\n"
       << "orders       (" << orders << ")\n"
       << "discrepancy  " << to_string(rep.discrepancy) << "\n"
       << "E^3          " << (rep.e_cubed ? to_string(*rep.e_cubed) : "-") << "\n\n";
    TextTable t({"chart", "group", "finding", "type", "detail"});
    for (const auto& f : rep.findings) {
        std::string group;
        for (const auto& fac : rep.charts.charts[f.chart].factors) {
            group += (group.empty() ? "" : " x ") + fac.as_quotient_type().str();
        }
        t.add({names[f.chart], group.empty() ? "trivial" : group, to_string(f.kind), f.type ? f.type->str() : "-",
               f.detail});
    }
    os << t.render();
    return os.str();
}

inline CommandResult cmd_blowup(const Options& o) {
    const Json doc = detail::read_json_file(o.model);
    CommandResult res;
    if (doc.is_object() && doc.contains("ambient")) {
        const GermSpec spec = germ_from_json(doc);
        const BlowupReport rep = blowup(spec.germ, spec.weights);
        res.out = o.format == "json" ? to_json(rep, spec.germ.vars).dump(2) + "\n" : render_blowup(rep, spec.germ.vars);
        return res;
    }
    const CD2Model model = cd2_model_from_json(doc);
    const ValidationReport validation = validate(model);
    if (!validation.passed()) {
        res.exit_code = 1;
        res.out = o.format == "json" ? Json{{"validation", to_json(validation)}}.dump(2) + "\n"
                                     : detail::render_report(validation);
        return res;
    }
    const BlowupReport rep = blowup(cd2_germ(model), cd2_weight_vector(model.r));
    const ValidationReport profile = verify_e1_profile(model.r, model);
    res.exit_code = profile.passed() ? 0 : 1;
    if (o.format == "json") {
        Json j = to_json(rep, cd2_variables());
        j["r"] = model.r;
        j["profile"] = to_json(profile);
        res.out = j.dump(2) + "\n";
    } else {
        res.out = "r = " + std::to_string(model.r) + "\n" + render_blowup(rep, cd2_variables()) + "\n" +
                  detail::render_report(profile);
    }
    return res;
}

inline CommandResult cmd_validate(const Options& o) {
    const CD2Model model = cd2_model_from_json(detail::read_json_file(o.model));
    const ValidationReport rep = validate(model, o.strict_remark);
    CommandResult res;
    res.exit_code = rep.passed() ? 0 : 1;
    res.out = o.format == "json" ? to_json(rep).dump(2) + "\n" : detail::render_report(rep);
    return res;
}

inline CommandResult cmd_generate(const Options& o) {
    const CD2Model model = generate(o.r, o.seed, o.extra);
    const std::string text = to_json(model).dump(2) + "\n";
    CommandResult res;
    if (!o.out_path.empty()) {
        std::ofstream out(o.out_path);
        if (!out) {
            throw detail::InputError("cannot write '" + o.out_path + "'");
        }
        out << text;
        res.out = o.format == "json" ? text
                                     : "wrote " + o.out_path + "\np = " + format_polynomial(model.p) +
                                           "\nq = " + format_polynomial(model.q) + "\n";
    } else {
        res.out = o.format == "json" ? text
                                     : "p = " + format_polynomial(model.p) + "\nq = " + format_polynomial(model.q) + "\n";
    }
    return res;
}

inline CommandResult run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"divcon: lattice counts, weighted blow-ups and cD/2 model checks"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));

    auto* ni = app.add_subcommand("ni", "List the lattice points of N_i");
    ni->add_option("--r", o.r, "Odd index r >= 7")->required();
    ni->add_option("--i", o.i, "Degree i")->required();
    ni->add_option("--parity", o.parity, "Restrict to parity j")->check(CLI::Range(0, 1));

    auto* dims = app.add_subcommand("dims", "Table of dim V_i^j for 0 <= i <= imax");
    dims->add_option("--r", o.r, "Odd index r >= 7")->required();
    dims->add_option("--imax", o.i_max, "Largest degree")->required();

    auto* vdim = app.add_subcommand("verify-dim", "Check the dimension recursion and rebuild B");
    vdim->add_option("--r", o.r, "Odd index r >= 7")->required();
    vdim->add_option("--imax", o.i_max, "Largest degree, at least 2r")->required();
    vdim->add_option("--threads", o.threads, "Worker threads (default: DIVCON_THREADS or all cores)");

    auto* term = app.add_subcommand("terminal", "Reid-Tai terminality of a cyclic quotient");
    term->add_option("--type", o.type, "Quotient type, e.g. \"1/14(1,13,11)\"")->required();

    auto* ch = app.add_subcommand("charts", "Chart groups of a weighted blow-up");
    ch->add_option("--ambient", o.ambient, "Ambient quotient type")->required();
    ch->add_option("--weights", o.weights, "Comma-separated rational weights")->required();

    auto* bl = app.add_subcommand("blowup", "Blow up a germ or cD/2 model file");
    bl->add_option("--model", o.model, "Germ or model JSON file")->required();

    auto* val = app.add_subcommand("validate", "Validate a cD/2 model file");
    val->add_option("--model", o.model, "Model JSON file")->required();
    val->add_flag("--strict-remark", o.strict_remark, "Also require the residue-class monomials");

    auto* gen = app.add_subcommand("generate", "Sample a cD/2 model");
    gen->add_option("--r", o.r, "Index r = +-1 mod 8, r >= 7")->required();
    gen->add_option("--seed", o.seed, "RNG seed")->required();
    gen->add_option("--extra", o.extra, "Weight range of p above r");
    gen->add_option("--out", o.out_path, "Output file");

    CommandResult res;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::CallForAllHelp&) {
        res.out = app.help("", CLI::AppFormatMode::All);
        return res;
    } catch (const CLI::ParseError& e) {
        res.exit_code = 2;
        res.err = std::string(e.what()) + "\n";
        return res;
    }

    try {
        if (ni->parsed()) return cmd_ni(o);
        if (dims->parsed()) return cmd_dims(o);
        if (vdim->parsed()) return cmd_verify_dim(o);
        if (term->parsed()) return cmd_terminal(o);
        if (ch->parsed()) return cmd_charts(o);
        if (bl->parsed()) return cmd_blowup(o);
        if (val->parsed()) return cmd_validate(o);
        if (gen->parsed()) return cmd_generate(o);
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.err = std::string("malformed input: ") + e.what() + "\n";
        return res;
    } catch (const Error& e) {
        res.exit_code = 2;
        res.err = std::string("error: ") + e.what() + "\n";
        return res;
    }
    res.exit_code = 2;
    res.err = "no subcommand\n";
    return res;
}

}  // namespace divcon::cli
