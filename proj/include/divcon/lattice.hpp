#pragma once

// Lattices of the form N = Z^m + Z (1/n)(a_1, ..., a_m) and the toric charts
// of the weighted blow-up given by a primitive v in N.  Finite abelian groups
// are handled as images of rational generators in (Q/Z)^k, decomposed with
// Smith normal form.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/matrix.hpp"
#include "divcon/quotient.hpp"
#include "divcon/rational.hpp"
#include "divcon/smith.hpp"

namespace divcon {

using RationalVector = std::vector<Rational>;

inline std::string format_vector(const RationalVector& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        out += (k ? "," : "") + to_string(v[k]);
    }
    return out + ")";
}

inline bool is_in_lattice(const RationalVector& v, const QuotientType& ambient) {
    if (v.size() != ambient.arity()) {
        return false;
    }
    std::vector<Integer> scaled;
    for (const auto& x : v) {
        const Rational y = x * ambient.n;
        if (!is_integral(y)) {
            return false;
        }
        scaled.push_back(numerator_of(y));
    }
    for (long long k = 0; k < ambient.n; ++k) {
        bool hit = true;
        for (std::size_t i = 0; i < v.size() && hit; ++i) {
            hit = mod_floor(scaled[i] - Integer(k) * ambient.weights[i], Integer(ambient.n)) == 0;
        }
        if (hit) {
            return true;
        }
    }
    return false;
}

/// v in N, v != 0, and v/k not in N for every integer k >= 2.
inline bool is_primitive(const RationalVector& v, const QuotientType& ambient) {
    if (!is_in_lattice(v, ambient)) {
        return false;
    }
    Integer g = 0;
    for (const auto& x : v) {
        g = boost::multiprecision::gcd(g, numerator_of(x * ambient.n));
    }
    if (g == 0) {
        return false;
    }
    // v/k in N lies in (1/n)Z^m, so k divides every entry of n*v.
    for (Integer k = 2; k <= g; ++k) {
        if (g % k != 0) {
            continue;
        }
        RationalVector w;
        for (const auto& x : v) {
            w.push_back(x / Rational(k));
        }
        if (is_in_lattice(w, ambient)) {
            return false;
        }
    }
    return true;
}

/// Z/order acting with the given weights (mod order) on k coordinates.
struct CyclicFactor {
    long long order = 1;
    std::vector<long long> weights;

    QuotientType as_quotient_type() const { return QuotientType(order, weights); }
};

namespace detail {

inline Matrix<Rational> to_rational(const Matrix<Integer>& m) {
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = Rational(m(r, c));
        }
    }
    return out;
}

inline Matrix<Integer> to_integer(const Matrix<Rational>& m) {
    Matrix<Integer> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!is_integral(m(r, c))) {
                throw Error("expected an integral matrix");
            }
            out(r, c) = numerator_of(m(r, c));
        }
    }
    return out;
}

inline Matrix<Integer> unimodular_inverse(const Matrix<Integer>& m) {
    return to_integer(inverse(to_rational(m)));
}

}  // namespace detail

/// Invariant-factor decomposition of the subgroup of (Q/Z)^k generated by the
/// given vectors.  Only factors of order > 1 are returned, each with a
/// generator's coordinates scaled to integers mod its order.
inline std::vector<CyclicFactor> image_group(const std::vector<RationalVector>& generators, std::size_t k) {
    if (k == 0) {
        return {};
    }
    Integer den = 1;
    for (const auto& g : generators) {
        if (g.size() != k) {
            throw Error("generator of wrong length in image_group");
        }
        for (const auto& x : g) {
            den = boost::multiprecision::lcm(den, denominator_of(x));
        }
    }
    // Rows D*g_i and D*e_j span the lattice L with D Z^k <= L <= Z^k; the
    // group is L / D Z^k.
    Matrix<Integer> gens(generators.size() + k, k);
    for (std::size_t r = 0; r < generators.size(); ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            gens(r, c) = numerator_of(generators[r][c] * Rational(den));
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        gens(generators.size() + j, j) = den;
    }
    const auto snf = smith_normal_form(gens);
    const auto s = snf.diagonal();
    const Matrix<Integer> v_inv = detail::unimodular_inverse(snf.v);
    Matrix<Integer> basis(k, k);  // rows: s_j * (row j of V^-1)
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < k; ++c) {
            basis(j, c) = s[j] * v_inv(j, c);
        }
    }
    // D*e_j expressed in that basis.
    Matrix<Rational> rel = detail::to_rational(snf.v);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
            rel(j, l) = rel(j, l) * Rational(den) / Rational(s[l]);
        }
    }
    const auto snf2 = smith_normal_form(detail::to_integer(rel));
    const auto h = snf2.diagonal();
    const Matrix<Integer> v2_inv = detail::unimodular_inverse(snf2.v);
    const Matrix<Integer> elements = v2_inv * basis;  // row l generates factor l (times 1/D)

    std::vector<CyclicFactor> out;
    for (std::size_t l = 0; l < k; ++l) {
        if (h[l] == 1) {
            continue;
        }
        CyclicFactor f;
        f.order = h[l].convert_to<long long>();
        for (std::size_t c = 0; c < k; ++c) {
            const Rational w = Rational(elements(l, c)) * Rational(h[l]) / Rational(den);
            if (!is_integral(w)) {
                throw Error("image_group: generator weight is not integral");
            }
            f.weights.push_back(mod_floor(numerator_of(w), h[l]).convert_to<long long>());
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// The quotient group of one chart of the weighted blow-up: coordinate i is
/// replaced by the exceptional coordinate, the others keep their index.
struct ChartGroup {
    std::size_t coordinate = 0;
    std::vector<CyclicFactor> factors;

    long long order() const {
        long long o = 1;
        for (const auto& f : factors) {
            o *= f.order;
        }
        return o;
    }

    /// The quotient type when the group is cyclic (trivial counts as 1/1(0,...)).
    std::optional<QuotientType> cyclic_type(std::size_t arity) const {
        if (factors.empty()) {
            return QuotientType(1, std::vector<long long>(arity, 0));
        }
        if (factors.size() == 1) {
            return factors.front().as_quotient_type();
        }
        return std::nullopt;
    }
};

struct ChartReport {
    QuotientType ambient;
    RationalVector v;
    std::vector<ChartGroup> charts;
};

inline void require_weight_vector(const RationalVector& v, const QuotientType& ambient) {
    if (v.size() != ambient.arity()) {
        throw LatticeError("weight vector has " + std::to_string(v.size()) + " entries, ambient " +
                           ambient.str() + " has " + std::to_string(ambient.arity()));
    }
    for (const auto& x : v) {
        if (x <= 0) {
            throw LatticeError("weight vector entries must be positive: " + format_vector(v));
        }
    }
    if (!is_in_lattice(v, ambient)) {
        throw LatticeError(format_vector(v) + " is not in the lattice of " + ambient.str());
    }
    if (!is_primitive(v, ambient)) {
        throw LatticeError(format_vector(v) + " is not primitive in the lattice of " + ambient.str());
    }
}

/// Chart i is C^m / (N / L_i), L_i spanned by v and e_j (j != i).  The group
/// is the image of N's generators under x -> B_i^{-1} x mod Z^m, B_i being the
/// matrix of cone generators.
inline ChartReport charts(const QuotientType& ambient, const RationalVector& v) {
    require_weight_vector(v, ambient);
    const std::size_t m = ambient.arity();
    std::vector<RationalVector> lattice_gens;
    for (std::size_t j = 0; j < m; ++j) {
        RationalVector e(m, Rational(0));
        e[j] = 1;
        lattice_gens.push_back(std::move(e));
    }
    RationalVector twist;
    for (auto a : ambient.weights) {
        twist.push_back(Rational(a, ambient.n));
    }
    lattice_gens.push_back(std::move(twist));

    ChartReport report{ambient, v, {}};
    for (std::size_t i = 0; i < m; ++i) {
        Matrix<Rational> cone = Matrix<Rational>::identity(m);
        for (std::size_t r = 0; r < m; ++r) {
            cone(r, i) = v[r];
        }
        const Matrix<Rational> to_cone = inverse(cone);
        std::vector<RationalVector> images;
        for (const auto& g : lattice_gens) {
            RationalVector c(m, Rational(0));
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t k = 0; k < m; ++k) {
                    c[r] += to_cone(r, k) * g[k];
                }
            }
            images.push_back(std::move(c));
        }
        report.charts.push_back({i, image_group(images, m)});
    }
    return report;
}

}  // namespace divcon
