#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "divcon/matrix.hpp"

namespace divcon {

template <class Int>
struct SmithDecomposition {
    Matrix<Int> u;  // unimodular, rows x rows
    Matrix<Int> d;  // diagonal, d_1 | d_2 | ..., entries >= 0
    Matrix<Int> v;  // unimodular, cols x cols

    std::vector<Int> diagonal() const {
        std::vector<Int> out;
        for (std::size_t k = 0; k < std::min(d.rows(), d.cols()); ++k) {
            out.push_back(d(k, k));
        }
        return out;
    }
};

/// U * A * V == D with U, V unimodular and D in Smith normal form.
template <class Int>
SmithDecomposition<Int> smith_normal_form(const Matrix<Int>& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix<Int> d = a;
    Matrix<Int> u = Matrix<Int>::identity(m);
    Matrix<Int> v = Matrix<Int>::identity(n);
    auto abs_of = [](const Int& x) { return x < 0 ? Int(-x) : x; };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t r = t; r < m; ++r) {
                for (std::size_t c = t; c < n; ++c) {
                    if (d(r, c) != 0 && (!best || abs_of(d(r, c)) < abs_of(d(best->first, best->second)))) {
                        best = {r, c};
                    }
                }
            }
            if (!best) {
                return {std::move(u), std::move(d), std::move(v)};
            }
            if (best->first != t) {
                d.swap_rows(t, best->first);
                u.swap_rows(t, best->first);
            }
            if (best->second != t) {
                d.swap_cols(t, best->second);
                v.swap_cols(t, best->second);
            }
            bool clean = true;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (d(r, t) == 0) {
                    continue;
                }
                const Int q = d(r, t) / d(t, t);
                d.add_row_multiple(r, t, Int(-q));
                u.add_row_multiple(r, t, Int(-q));
                clean = clean && d(r, t) == 0;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (d(t, c) == 0) {
                    continue;
                }
                const Int q = d(t, c) / d(t, t);
                d.add_col_multiple(c, t, Int(-q));
                v.add_col_multiple(c, t, Int(-q));
                clean = clean && d(t, c) == 0;
            }
            if (!clean) {
                continue;
            }
            // Divisibility: pull an offending row into the pivot row and redo.
            std::optional<std::size_t> offender;
            for (std::size_t r = t + 1; r < m && !offender; ++r) {
                for (std::size_t c = t + 1; c < n; ++c) {
                    if (d(r, c) % d(t, t) != 0) {
                        offender = r;
                        break;
                    }
                }
            }
            if (!offender) {
                break;
            }
            d.add_row_multiple(t, *offender, Int(1));
            u.add_row_multiple(t, *offender, Int(1));
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

}  // namespace divcon
