#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kup/scalar.hpp"

namespace kup {

using Vec = std::vector<Scalar>;

// Dense row-major matrix over a Field.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    Field field{};
    std::vector<Scalar> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, Field f = Field::rational())
        : rows(r), cols(c), field(f), a(r * c, Scalar::zero(f)) {}

    static Matrix identity(std::size_t n, Field f = Field::rational()) {
        Matrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
        return m;
    }

    Scalar& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] != o.a[k]) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(rows, o.cols, field);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const Scalar& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols; ++j) {
                    const Scalar& y = o(k, j);
                    if (!y.is_zero()) r(i, j) += x * y;
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (std::size_t k = 0; k < a.size(); ++k) r.a[k] += o.a[k];
        return r;
    }

    Matrix scaled(const Scalar& c) const {
        Matrix r = *this;
        for (auto& x : r.a) x *= c;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows, field);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Scalar trace() const {
        Scalar s = Scalar::zero(field);
        for (std::size_t i = 0; i < rows && i < cols; ++i) s += (*this)(i, i);
        return s;
    }
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

// Basis of {x : m x = 0}, one vector per free column in increasing order, each
// with a 1 in its free column.
inline std::vector<Vec> nullspace(Matrix m) {
    auto piv = rref(m);
    std::vector<char> is_piv(m.cols, 0);
    for (auto c : piv) is_piv[c] = 1;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(m.cols, Scalar::zero(m.field));
        v[f] = Scalar::one(m.field);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    std::size_t n = m.rows;
    Matrix aug(n, 2 * n, m.field);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar::one(m.field);
    }
    auto piv = rref(aug);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n, m.field);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

}  // namespace kup
