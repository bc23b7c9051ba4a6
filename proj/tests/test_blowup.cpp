#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "divcon/blowup.hpp"

using namespace divcon;

namespace {

const int kIndices[] = {7, 9, 15, 17, 23, 25};

RationalVector vec(std::initializer_list<Rational> xs) { return RationalVector(xs); }

CIGerm empty_germ(const QuotientType& amb, std::vector<std::string> vars) { return CIGerm{amb, std::move(vars), {}}; }

CD2Model model(int r, const char* p, const char* q) {
    return CD2Model{r, parse_polynomial(p, {"x2", "x3", "x4"}), parse_polynomial(q, {"x1", "x3", "x4"})};
}

// Semi-invariant monomials of the given character and weight above `above`,
// added with random coefficients; never touches terms that matter at weight
// <= above.
SparsePoly perturbation(std::mt19937_64& rng, const CIGerm& g, const RationalVector& v, const Rational& above,
                        long long character) {
    const auto w = germ_weights(g, v);
    const auto act = g.action();
    SparsePoly out(g.vars);
    for (int tries = 0; tries < 40; ++tries) {
        Exponents e;
        for (std::size_t k = 0; k < g.vars.size(); ++k) {
            e.push_back(static_cast<int>(rng() % 4));
        }
        SparsePoly mono(g.vars);
        mono.add_term(e, 1);
        if (monomial_weight(mono, e, w) <= above || act.character_of(mono, e) != character) {
            continue;
        }
        out.add_term(e, Rational(1 + static_cast<long long>(rng() % 9), 1 + static_cast<long long>(rng() % 4)));
    }
    return out;
}

}  // namespace

TEST(EquationOrders, Examples) {
    const auto m = generate(7, 1, 2);
    EXPECT_EQ(equation_orders(cd2_germ(m), cd2_weight_vector(7)), (std::vector<Rational>{8, 6}));
    CIGerm lin{QuotientType(1, {0, 0, 0, 0}), {"x1", "x2", "x3", "x4"}, {parse_polynomial("x4")}};
    EXPECT_EQ(equation_orders(lin, vec({5, 3, 2, Rational(7, 3)})), (std::vector<Rational>{Rational(7, 3)}));
    EXPECT_TRUE(equation_orders(empty_germ(QuotientType(1, {0, 0, 0}), {"a", "b", "c"}), vec({1, 1, 1})).empty());
}

TEST(Discrepancy, SmoothBlowup) {
    const auto g = empty_germ(QuotientType(1, {0, 0, 0}), {"a", "b", "c"});
    EXPECT_EQ(discrepancy(g, vec({1, 1, 1})), 2);
    EXPECT_EQ(e_cubed(g, vec({1, 1, 1})), 1);
    const auto rep = blowup(g, vec({1, 1, 1}));
    for (const auto& f : rep.findings) {
        EXPECT_EQ(f.kind, FindingKind::Smooth);
    }
}

TEST(Discrepancy, WeightedSmoothBlowup) {
    const auto g = empty_germ(QuotientType(1, {0, 0, 0}), {"a", "b", "c"});
    EXPECT_EQ(discrepancy(g, vec({1, 2, 3})), 5);
    EXPECT_EQ(e_cubed(g, vec({1, 2, 3})), Rational(1, 6));
}

TEST(Discrepancy, TerminalQuotientPoint) {
    const auto g = empty_germ(QuotientType(5, {2, 3, 1}), {"a", "b", "c"});
    EXPECT_EQ(discrepancy(g, vec({Rational(2, 5), Rational(3, 5), Rational(1, 5)})), Rational(1, 5));
    for (long long r = 2; r <= 31; ++r) {
        for (long long a = 1; a < r; ++a) {
            if (std::gcd(a, r) != 1) {
                continue;
            }
            const auto k = empty_germ(QuotientType(r, {a, r - a, 1}), {"a", "b", "c"});
            const auto v = vec({Rational(a, r), Rational(r - a, r), Rational(1, r)});
            EXPECT_EQ(discrepancy(k, v), Rational(1, r));
            EXPECT_EQ(e_cubed(k, v), Rational(r * r, a * (r - a)));
        }
    }
}

TEST(ECubed, Veronese) {
    const auto g = empty_germ(QuotientType(2, {1, 1, 1}), {"a", "b", "c"});
    const auto v = vec({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    EXPECT_EQ(e_cubed(g, v), 4);
    EXPECT_EQ(discrepancy(g, v), Rational(1, 2));
}

TEST(ECubed, NeedsThreefold) {
    const auto g = empty_germ(QuotientType(1, {0, 0, 0, 0}), {"a", "b", "c", "d"});
    EXPECT_THROW(e_cubed(g, vec({1, 1, 1, 1})), DimensionError);
    const auto rep = blowup(g, vec({1, 1, 1, 1}));
    EXPECT_FALSE(rep.e_cubed.has_value());
    EXPECT_EQ(rep.discrepancy, 3);
}

TEST(ECubed, EffectiveOrderIgnoresTrivialPart) {
    // 1/4(2,2,2) acts through Z/2.
    const auto g = empty_germ(QuotientType(4, {2, 2, 2}), {"a", "b", "c"});
    EXPECT_EQ(effective_order(g.ambient), 2);
    EXPECT_EQ(e_cubed(g, vec({Rational(1, 2), Rational(1, 2), Rational(1, 2)})), 4);
}

TEST(Germ, Validation) {
    const QuotientType amb(2, {1, 1, 1, 0, 0});
    const auto vars = cd2_variables();
    EXPECT_THROW(blowup(CIGerm{amb, {"x1", "x2"}, {}}, vec({1, 1})), PreconditionError);
    EXPECT_THROW(blowup(CIGerm{amb, vars, {parse_polynomial("x1 + 1", vars)}}, cd2_weight_vector(7)), PreconditionError);
    EXPECT_THROW(blowup(CIGerm{amb, vars, {parse_polynomial("x1 + x4", vars)}}, cd2_weight_vector(7)), PreconditionError);
    EXPECT_THROW(blowup(CIGerm{amb, vars, {parse_polynomial("y^2")}}, cd2_weight_vector(7)), PreconditionError);
    EXPECT_THROW(blowup(CIGerm{amb, vars, {}}, vec({8, 6, 4, 2, 14})), LatticeError);
}

TEST(StrictTransform, ExactDivision) {
    const auto m = model(7, "x3^4", "x1*x3 + x4^6");
    const auto eqs = cd2_equations(m);
    const auto v = cd2_weight_vector(7);
    for (std::size_t i = 0; i < 5; ++i) {
        for (const auto& f : eqs) {
            const auto terms = strict_transform(f, cd2_variables(), v, i);
            ASSERT_FALSE(terms.empty());
            EXPECT_TRUE(std::any_of(terms.begin(), terms.end(), [](const ChartTerm& t) { return t.t_exp == 0; }));
            for (const auto& t : terms) {
                EXPECT_GE(t.t_exp, 0);
                EXPECT_EQ(t.e[i], 0);
            }
        }
    }
}

TEST(CD2Blowup, SevenProfile) {
    const auto m = model(7, "x3^4", "x1*x3 + x4^6");
    const auto rep = blowup(cd2_germ(m), cd2_weight_vector(7));
    EXPECT_EQ(rep.orders, (std::vector<Rational>{8, 6}));
    EXPECT_EQ(rep.discrepancy, 2);
    EXPECT_EQ(rep.e_cubed, Rational(1, 7));
    ASSERT_EQ(rep.findings.size(), 5U);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(rep.findings[i].kind, FindingKind::Absent) << i;
    }
    EXPECT_EQ(rep.findings[4].kind, FindingKind::Quotient);
    EXPECT_EQ(rep.findings[4].type, QuotientType(14, {1, 3, 13}));
    EXPECT_EQ(rep.findings[4].type, normalize_quotient_type(QuotientType(14, {1, 13, 11})));
    EXPECT_EQ(rep.non_gorenstein(), (std::vector<std::size_t>{4}));
    EXPECT_TRUE(verify_e1_profile(7, m).passed());
}

TEST(CD2Blowup, MissingX4PowerLeavesIndexTwoPoint) {
    // Neither x4^(r-1) in q nor x4^(r+1) in p: the x4-chart origin lies on
    // the strict transform with too small a linear part.
    const auto m = model(7, "x3^4", "x1*x3");
    ASSERT_TRUE(validate(m).passed());
    const auto rep = blowup(cd2_germ(m), cd2_weight_vector(7));
    EXPECT_EQ(rep.findings[3].kind, FindingKind::ManualAnalysisRequired);
    EXPECT_EQ(rep.count(FindingKind::ManualAnalysisRequired), 1U);
    EXPECT_EQ(rep.findings[4].type, expected_q_point(7));
    const auto profile = verify_e1_profile(7, m);
    EXPECT_FALSE(profile.passed());
    EXPECT_FALSE(profile.find("no ManualAnalysisRequired")->passed);
    EXPECT_TRUE(profile.find("discrepancy = 2")->passed);

    const auto with_p = model(7, "x3^4 + x4^8", "x1*x3");
    EXPECT_TRUE(verify_e1_profile(7, with_p).passed());
}

TEST(CD2Blowup, GeneratedModelsAcrossIndices) {
    for (int r : kIndices) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto m = generate(r, seed, 3);
            const auto rep = verify_e1_profile(r, m);
            for (const auto& c : rep.checks) {
                EXPECT_TRUE(c.passed) << "r=" << r << " seed=" << seed << " " << c.name << ": " << c.detail;
            }
        }
    }
}

TEST(CD2Blowup, ProfileRejectsBadIndex) {
    const auto m = model(11, "x3^6", "x4^10 + x3^5");
    EXPECT_THROW(verify_e1_profile(11, m), PreconditionError);
    EXPECT_THROW(verify_e1_profile(8, m), PreconditionError);
    const auto seven = generate(7, 3, 2);
    EXPECT_FALSE(verify_e1_profile(15, seven).passed());
}

TEST(Invariance, PermutingCoordinates) {
    std::mt19937_64 rng(37);
    for (int r : kIndices) {
        const auto m = generate(r, r, 2);
        const auto g = cd2_germ(m);
        const auto v = cd2_weight_vector(r);
        const auto base = blowup(g, v);
        std::vector<std::size_t> perm{0, 1, 2, 3, 4};
        for (int t = 0; t < 4; ++t) {
            std::shuffle(perm.begin(), perm.end(), rng);
            CIGerm h;
            RationalVector pv;
            std::vector<long long> pw;
            for (auto k : perm) {
                h.vars.push_back(g.vars[k]);
                pv.push_back(v[k]);
                pw.push_back(g.ambient.weights[k]);
            }
            h.ambient = QuotientType(g.ambient.n, pw);
            for (const auto& f : g.equations) {
                h.equations.push_back(f.over(h.vars));
            }
            const auto rep = blowup(h, pv);
            EXPECT_EQ(rep.discrepancy, base.discrepancy);
            EXPECT_EQ(rep.e_cubed, base.e_cubed);
            for (std::size_t i = 0; i < 5; ++i) {
                EXPECT_EQ(rep.findings[i].kind, base.findings[perm[i]].kind);
                EXPECT_EQ(rep.findings[i].type, base.findings[perm[i]].type);
            }
        }
    }
}

// Quotient findings only depend on the linear part at the chart origin, so
// adding terms of weight above each equation's order changes nothing.
TEST(Invariance, EliminationIsConservative) {
    std::mt19937_64 rng(41);
    int quotients = 0;
    for (int r : kIndices) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const auto g = cd2_germ(generate(r, 100 + seed, 2));
            const auto v = cd2_weight_vector(r);
            const auto base = blowup(g, v);
            for (int t = 0; t < 3; ++t) {
                CIGerm h = g;
                for (std::size_t k = 0; k < h.equations.size(); ++k) {
                    h.equations[k] = h.equations[k] + perturbation(rng, g, v, base.orders[k], 0);
                }
                const auto rep = blowup(h, v);
                EXPECT_EQ(rep.orders, base.orders);
                for (std::size_t i = 0; i < rep.findings.size(); ++i) {
                    if (base.findings[i].kind == FindingKind::Quotient) {
                        ++quotients;
                        EXPECT_EQ(rep.findings[i].kind, FindingKind::Quotient);
                        EXPECT_EQ(rep.findings[i].type, base.findings[i].type);
                    }
                }
            }
        }
    }
    EXPECT_GT(quotients, 0);
}

TEST(ChartFindings, QuotientPointBlowupHasTerminalCharts) {
    const auto g = empty_germ(QuotientType(5, {2, 3, 1}), {"a", "b", "c"});
    const auto rep = blowup(g, vec({Rational(2, 5), Rational(3, 5), Rational(1, 5)}));
    EXPECT_EQ(rep.findings[0].type, QuotientType(2, {1, 1, 1}));
    EXPECT_EQ(rep.findings[1].type, QuotientType(3, {1, 1, 2}));
    EXPECT_EQ(rep.findings[2].kind, FindingKind::Smooth);
}

TEST(ChartFindings, HypersurfaceWithoutLinearTerm) {
    // xy = z^2 + w^4 blown up at the origin: the w-chart origin is a double point.
    CIGerm g{QuotientType(1, {0, 0, 0, 0}), {"x", "y", "z", "w"}, {parse_polynomial("x*y - z^2 - w^4")}};
    const auto rep = blowup(g, vec({1, 1, 1, 1}));
    EXPECT_EQ(rep.findings[0].kind, FindingKind::Smooth);
    EXPECT_EQ(rep.findings[2].kind, FindingKind::Absent);
    EXPECT_EQ(rep.findings[3].kind, FindingKind::ManualAnalysisRequired);
    EXPECT_EQ(rep.discrepancy, 1);
    EXPECT_EQ(rep.e_cubed, 2);
}
