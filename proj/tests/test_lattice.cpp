#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "divcon/lattice.hpp"
#include "divcon/smith.hpp"

using namespace divcon;

namespace {

Matrix<Rational> as_rational(const Matrix<Integer>& m) { return detail::to_rational(m); }

RationalVector vec(std::initializer_list<Rational> xs) { return RationalVector(xs); }

long long effective_n(const QuotientType& q) {
    long long g = q.n;
    for (auto a : q.weights) {
        g = std::gcd(g, a);
    }
    return q.n / g;
}

}  // namespace

TEST(Smith, Identity) {
    const auto id = Matrix<Integer>::identity(3);
    const auto snf = smith_normal_form(id);
    EXPECT_EQ(snf.u, id);
    EXPECT_EQ(snf.d, id);
    EXPECT_EQ(snf.v, id);
}

TEST(Smith, AlreadyDiagonal) {
    const Matrix<Integer> a{{2, 0}, {0, 4}};
    EXPECT_EQ(smith_normal_form(a).d, a);
    const Matrix<Integer> b{{4, 0}, {0, 6}};
    EXPECT_EQ(smith_normal_form(b).diagonal(), (std::vector<Integer>{2, 12}));
}

TEST(Smith, RandomMatricesRemultiply) {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 200; ++t) {
        const std::size_t rows = 1 + rng() % 5;
        const std::size_t cols = 1 + rng() % 5;
        Matrix<Integer> a(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                a(r, c) = static_cast<long long>(rng() % 19) - 9;
            }
        }
        const auto snf = smith_normal_form(a);
        EXPECT_EQ(snf.u * a * snf.v, snf.d);
        EXPECT_EQ(abs(numerator_of(determinant(as_rational(snf.u)))), 1);
        EXPECT_EQ(abs(numerator_of(determinant(as_rational(snf.v)))), 1);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (r != c) {
                    EXPECT_EQ(snf.d(r, c), 0);
                }
            }
        }
        const auto diag = snf.diagonal();
        for (std::size_t k = 0; k < diag.size(); ++k) {
            EXPECT_GE(diag[k], 0);
            if (k + 1 < diag.size() && diag[k] != 0) {
                EXPECT_EQ(diag[k + 1] % diag[k], 0);
            }
            if (k + 1 < diag.size() && diag[k] == 0) {
                EXPECT_EQ(diag[k + 1], 0);
            }
        }
        if (rows == cols) {
            Integer prod = 1;
            for (const auto& x : diag) {
                prod *= x;
            }
            EXPECT_EQ(prod, abs(numerator_of(determinant(as_rational(a)))));
        }
    }
}

TEST(Lattice, Membership) {
    const QuotientType amb(2, {1, 1, 1, 0, 0});
    const auto v = vec({4, 3, 2, 1, 7});
    EXPECT_TRUE(is_in_lattice(v, amb));
    EXPECT_TRUE(is_primitive(v, amb));
    const QuotientType trivial(1, {0, 0, 0});
    EXPECT_TRUE(is_in_lattice(vec({2, 2, 2}), trivial));
    EXPECT_FALSE(is_primitive(vec({2, 2, 2}), trivial));
    const QuotientType half(2, {1, 1, 1});
    const auto g = vec({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    EXPECT_TRUE(is_in_lattice(g, half));
    EXPECT_TRUE(is_primitive(g, half));
    EXPECT_FALSE(is_in_lattice(vec({Rational(1, 2), 1, 1}), half));
    // (2,2,2) = 4 * (1/2,1/2,1/2) is not primitive in the finer lattice.
    EXPECT_FALSE(is_primitive(vec({2, 2, 2}), half));
}

TEST(ImageGroup, Decomposes) {
    const auto one = image_group({vec({Rational(1, 2), Rational(1, 2)})}, 2);
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0].order, 2);
    EXPECT_EQ(one[0].weights, (std::vector<long long>{1, 1}));
    const auto two = image_group({vec({Rational(1, 2), 0}), vec({0, Rational(1, 2)})}, 2);
    ASSERT_EQ(two.size(), 2U);
    EXPECT_EQ(two[0].order * two[1].order, 4);
    const auto cyclic = image_group({vec({Rational(1, 2), 0}), vec({0, Rational(1, 3)})}, 2);
    ASSERT_EQ(cyclic.size(), 1U);
    EXPECT_EQ(cyclic[0].order, 6);
    EXPECT_TRUE(image_group({vec({1, 2})}, 2).empty());
}

TEST(Charts, CD2SevenOrders) {
    const auto rep = charts(QuotientType(2, {1, 1, 1, 0, 0}), vec({4, 3, 2, 1, 7}));
    ASSERT_EQ(rep.charts.size(), 5U);
    const long long expected[] = {8, 6, 4, 2, 14};
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(rep.charts[i].order(), expected[i]) << i;
        EXPECT_TRUE(rep.charts[i].cyclic_type(5).has_value());
    }
    EXPECT_EQ(*rep.charts[4].cyclic_type(5), QuotientType(14, {13, 1, 3, 12, 2}));
    EXPECT_EQ(*rep.charts[3].cyclic_type(5), QuotientType(2, {1, 1, 1, 0, 0}));
}

TEST(Charts, OrdinaryBlowupIsSmooth) {
    const auto rep = charts(QuotientType(1, {0, 0, 0}), vec({1, 1, 1}));
    for (const auto& c : rep.charts) {
        EXPECT_TRUE(c.factors.empty());
        EXPECT_EQ(c.order(), 1);
    }
}

TEST(Charts, VeroneseChartsAreSmooth) {
    const auto rep = charts(QuotientType(2, {1, 1, 1}), vec({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
    for (const auto& c : rep.charts) {
        EXPECT_EQ(c.order(), 1);
    }
}

TEST(Charts, QuotientPointChartsAreTerminal) {
    for (long long r = 2; r <= 31; ++r) {
        for (long long a = 1; a < r; ++a) {
            if (std::gcd(a, r) != 1) {
                continue;
            }
            const QuotientType amb(r, {a, r - a, 1});
            const auto rep = charts(amb, vec({Rational(a, r), Rational(r - a, r), Rational(1, r)}));
            EXPECT_EQ(rep.charts[0].order(), a);
            EXPECT_EQ(rep.charts[1].order(), r - a);
            EXPECT_EQ(rep.charts[2].order(), 1);
            for (const auto& c : rep.charts) {
                const auto t = c.cyclic_type(3);
                ASSERT_TRUE(t.has_value());
                EXPECT_TRUE(reid_tai_is_terminal(*t)) << amb.str() << " chart " << c.coordinate << " " << t->str();
            }
        }
    }
    const auto k = charts(QuotientType(5, {2, 3, 1}), vec({Rational(2, 5), Rational(3, 5), Rational(1, 5)}));
    EXPECT_EQ(normalize_quotient_type(*k.charts[0].cyclic_type(3)), QuotientType(2, {1, 1, 1}));
    EXPECT_EQ(normalize_quotient_type(*k.charts[1].cyclic_type(3)), QuotientType(3, {1, 1, 2}));
}

TEST(Charts, OrderIsWeightTimesEffectiveIndex) {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 150; ++t) {
        const long long n = 1 + static_cast<long long>(rng() % 12);
        const std::size_t m = 2 + rng() % 4;
        std::vector<long long> w;
        for (std::size_t k = 0; k < m; ++k) {
            w.push_back(static_cast<long long>(rng() % n));
        }
        const QuotientType amb(n, w);
        const long long mult = static_cast<long long>(rng() % n);
        RationalVector v;
        for (std::size_t k = 0; k < m; ++k) {
            v.push_back(Rational(mod_floor(mult * w[k], n), n) + static_cast<long long>(rng() % 3));
        }
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x <= 0; }) || !is_primitive(v, amb)) {
            continue;
        }
        ++checked;
        const auto rep = charts(amb, v);
        for (std::size_t i = 0; i < m; ++i) {
            EXPECT_EQ(Rational(rep.charts[i].order()), v[i] * effective_n(amb)) << amb.str() << " " << format_vector(v);
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(Charts, RejectsBadWeights) {
    const QuotientType amb(2, {1, 1, 1, 0, 0});
    EXPECT_THROW(charts(amb, vec({8, 6, 4, 2, 14})), LatticeError);
    EXPECT_THROW(charts(amb, vec({Rational(1, 2), 1, 1, 1, 1})), LatticeError);
    EXPECT_THROW(charts(amb, vec({4, 3, 2, 1})), LatticeError);
    EXPECT_THROW(charts(amb, vec({4, 3, 2, 0, 7})), LatticeError);
}
