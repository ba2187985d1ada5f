#pragma once

// Dense row-major matrices and field linear algebra (over Q or K) on row
// vectors. Subspaces are represented by a basis of row vectors; the canonical
// representative is the reduced row echelon form.

#include "biext/exact.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace biext {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

    void append_row(std::span<const T> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using MatrixZ = Matrix<Integer>;
using MatrixQ = Matrix<Rational>;
using MatrixK = Matrix<KScalar>;

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
    Matrix<T> t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <class T>
Matrix<T> stack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() == 0 && a.cols() == 0) return b;
    if (b.rows() == 0 && b.cols() == 0) return a;
    if (a.cols() != b.cols()) throw std::invalid_argument("stack: column mismatch");
    Matrix<T> r = a;
    for (std::size_t i = 0; i < b.rows(); ++i) r.append_row(b.row(i));
    return r;
}

/// Kronecker product of row vectors: index i*|b| + j.
template <class T>
std::vector<T> kron(std::span<const T> a, std::span<const T> b) {
    std::vector<T> r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    }
    return r;
}

/// Block-diagonal embedding of row vector `v` at column offset `offset`.
template <class T>
std::vector<T> embed(std::span<const T> v, std::size_t offset, std::size_t total) {
    std::vector<T> r(total);
    for (std::size_t i = 0; i < v.size(); ++i) r[offset + i] = v[i];
    return r;
}

template <class T>
struct Echelon {
    Matrix<T> basis;                  // reduced row echelon form, nonzero rows only
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form over a field (Q or K).
template <class T>
Echelon<T> rref(Matrix<T> m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        const T inv = inverse(m(r, c));
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            const T f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<T> basis(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) basis(i, j) = std::move(m(i, j));
    return {std::move(basis), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).basis.rows();
}

/// Basis of {v : M v^t = 0}, i.e. the right kernel, as rows.
template <class T>
Matrix<T> kernel(const Matrix<T>& m) {
    const auto e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Matrix<T> k(cols - e.pivots.size(), cols);
    std::size_t out = 0;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        k(out, free) = T(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) k(out, e.pivots[i]) = -e.basis(i, free);
        ++out;
    }
    return k;
}

/// Canonical basis (RREF) of the row span.
template <class T>
Matrix<T> span_basis(const Matrix<T>& m) {
    return rref(m).basis;
}

/// Rows spanning the annihilator {c : c . u = 0 for all rows u}.
template <class T>
Matrix<T> annihilator(const Matrix<T>& basis, std::size_t dim) {
    if (basis.rows() == 0) return Matrix<T>::identity(dim);
    return kernel(basis);
}

template <class T>
Matrix<T> subspace_sum(const Matrix<T>& a, const Matrix<T>& b) {
    return span_basis(stack(a, b));
}

/// Intersection of two row spans inside the same ambient space.
template <class T>
Matrix<T> intersect(const Matrix<T>& a, const Matrix<T>& b, std::size_t dim) {
    if (a.rows() == 0 || b.rows() == 0) return Matrix<T>(0, dim);
    // x a = y b  <=>  (x, -y) in left kernel of [a; b]
    Matrix<T> ab = stack(a, b);
    Matrix<T> coeff = kernel(transpose(ab));
    Matrix<T> out(coeff.rows(), dim);
    for (std::size_t k = 0; k < coeff.rows(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (is_zero(coeff(k, i))) continue;
            for (std::size_t j = 0; j < dim; ++j) out(k, j) += coeff(k, i) * a(i, j);
        }
    return span_basis(out);
}

template <class T>
bool contains(const Matrix<T>& basis, std::span<const T> v) {
    Matrix<T> m = basis;
    const std::size_t before = rank(m);
    m.append_row(v);
    return rank(m) == before;
}

/// True when span(a) is a subspace of span(b).
template <class T>
bool is_subspace(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() == 0) return true;
    return rank(stack(a, b)) == rank(b);
}

/// Coefficients c with c * basis = x, or nothing when x is outside the span.
/// `basis` must have independent rows.
template <class T>
std::optional<std::vector<T>> solve_left(const Matrix<T>& basis, std::span<const T> x) {
    const std::size_t k = basis.rows();
    const std::size_t n = basis.cols();
    Matrix<T> aug(n, k + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) aug(j, i) = basis(i, j);
        aug(j, k) = x[j];
    }
    const auto e = rref(aug);
    std::vector<T> c(k);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == k) return std::nullopt;
        c[e.pivots[r]] = e.basis(r, k);
    }
    return c;
}

MatrixK to_k(const MatrixQ& m);
MatrixK to_k(const MatrixZ& m);
MatrixQ to_q(const MatrixZ& m);
MatrixK conj(const MatrixK& m);

}  // namespace biext
