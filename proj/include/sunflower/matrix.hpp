#pragma once

// Dense matrices over GF(q) and exact Gaussian elimination.

#include "sunflower/field.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace sunflower {

/// Row-major matrix of GF(q) element codes. The field is supplied by the
/// caller of every arithmetic routine.
class Matrix {
public:
    using Elem = Field::Elem;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        detail::require(data_.size() == rows_ * cols_, "matrix data size mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            detail::require(rows[i].size() == cols, "row length mismatch");
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<Elem>& data() const { return data_; }

    void append_row(std::span<const Elem> r) {
        detail::require(r.size() == cols_, "row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    /// Keeps the first n rows.
    void truncate(std::size_t n) {
        if (n >= rows_) return;
        rows_ = n;
        data_.resize(rows_ * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix columns(std::span<const std::size_t> idx) const {
        Matrix out(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
    friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
        if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
        if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
        return a.data_ <=> b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    detail::require(a.cols() == b.cols(), "vstack column mismatch");
    std::vector<Matrix::Elem> d(a.data());
    d.insert(d.end(), b.data().begin(), b.data().end());
    return Matrix(a.rows() + b.rows(), a.cols(), std::move(d));
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    detail::require(a.rows() == b.rows(), "hstack row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), out.row(i).begin());
        std::copy(b.row(i).begin(), b.row(i).end(), out.row(i).begin() + a.cols());
    }
    return out;
}

inline Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
    detail::require(a.cols() == b.rows(), "matrix product dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto orow = out.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const auto c = a(i, l);
            if (c == 0) continue;
            auto brow = b.row(l);
            for (std::size_t j = 0; j < b.cols(); ++j) orow[j] = F.add(orow[j], F.mul(c, brow[j]));
        }
    }
    return out;
}

inline Matrix subtract(const Field& F, const Matrix& a, const Matrix& b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shape mismatch");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.sub(a(i, j), b(i, j));
    return out;
}

struct RrefResult {
    Matrix reduced;  ///< nonzero rows only
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

namespace detail {

/// In-place Gauss-Jordan elimination. Returns pivot columns; rows beyond the
/// rank are zero afterwards. With `stop_col` only the first stop_col columns
/// are used for pivoting.
inline std::vector<std::size_t> eliminate(const Field& F, Matrix& m, std::size_t stop_col) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t c = 0; c < stop_col && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r) {
            auto a = m.row(sel), b = m.row(r);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto prow = m.row(r);
        if (const auto lead = prow[c]; lead != 1) {
            const auto li = F.inv(lead);
            for (std::size_t j = c; j < cols; ++j) prow[j] = F.mul(prow[j], li);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const auto f = m(i, c);
            if (f == 0) continue;
            auto row = m.row(i);
            for (std::size_t j = c; j < cols; ++j) row[j] = F.sub(row[j], F.mul(f, prow[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Unique reduced row echelon form with zero rows removed.
inline RrefResult rref(const Field& F, Matrix m) {
    auto piv = detail::eliminate(F, m, m.cols());
    m.truncate(piv.size());
    return {std::move(m), piv.size(), std::move(piv)};
}

inline std::size_t rank(const Field& F, Matrix m) { return detail::eliminate(F, m, m.cols()).size(); }

/// Basis (rows, in RREF) of the right null space {x : M x^T = 0}.
inline Matrix kernel(const Field& F, const Matrix& m) {
    const auto r = rref(F, m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    Matrix out(0, n);
    std::vector<Matrix::Elem> v(n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::fill(v.begin(), v.end(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.reduced(i, f));
        out.append_row(v);
    }
    return rref(F, std::move(out)).reduced;
}

/// Inverse of a square matrix; throws DomainError when singular.
inline Matrix inverse(const Field& F, const Matrix& m) {
    detail::require(m.rows() == m.cols(), "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug = hstack(m, Matrix::identity(n));
    auto piv = detail::eliminate(F, aug, n);
    if (piv.size() != n) throw DomainError("matrix is singular");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

}  // namespace sunflower
