#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "divcon/errors.hpp"

namespace divcon {

/// Small dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw Error("ragged matrix initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            m(k, k) = T(1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < cols_; ++c) {
            std::swap((*this)(a, c), (*this)(b, c));
        }
    }

    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows_; ++r) {
            std::swap((*this)(r, a), (*this)(r, b));
        }
    }

    /// row[dst] += f * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T& f) {
        for (std::size_t c = 0; c < cols_; ++c) {
            (*this)(dst, c) += f * (*this)(src, c);
        }
    }

    /// col[dst] += f * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const T& f) {
        for (std::size_t r = 0; r < rows_; ++r) {
            (*this)(r, dst) += f * (*this)(r, src);
        }
    }

    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            (*this)(r, c) = -(*this)(r, c);
        }
    }

    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) {
            (*this)(r, c) = -(*this)(r, c);
        }
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error("matrix shape mismatch in product");
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(r, k) == 0) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += a(r, k) * b(k, c);
                }
            }
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Gaussian elimination over a field: reduced row echelon form plus pivot columns.
template <class F>
std::pair<Matrix<F>, std::vector<std::size_t>> row_echelon(Matrix<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::optional<std::size_t> p;
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (!p) {
            continue;
        }
        m.swap_rows(row, *p);
        const F inv = F(1) / m(row, col);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m(row, c) *= inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != row && m(r, col) != 0) {
                m.add_row_multiple(r, row, -m(r, col));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
F determinant(Matrix<F> m) {
    if (m.rows() != m.cols()) {
        throw Error("determinant of a non-square matrix");
    }
    F det = 1;
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<std::size_t> p;
        for (std::size_t r = col; r < n; ++r) {
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        }
        if (!p) {
            return F(0);
        }
        if (*p != col) {
            m.swap_rows(col, *p);
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) != 0) {
                m.add_row_multiple(r, col, -m(r, col) / m(col, col));
            }
        }
    }
    return det;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) {
        throw Error("inverse of a non-square matrix");
    }
    Matrix<F> aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            aug(r, c) = m(r, c);
        }
        aug(r, n + r) = F(1);
    }
    auto [red, pivots] = row_echelon(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        throw Error("matrix is singular");
    }
    Matrix<F> out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out(r, c) = red(r, n + c);
        }
    }
    return out;
}

}  // namespace divcon
