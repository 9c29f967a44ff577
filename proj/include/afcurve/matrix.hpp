#pragma once

// Dense matrices over an exact field, with reduced row echelon form as the
// workhorse: rank, span dimension, membership of a vector in a row space.
// Desk-scale sizes only (a few hundred rows); plain Gauss-Jordan is exact
// and fast enough here.

#include "common.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace afc {

template <class K>
struct Matrix {
    std::size_t nrows = 0, ncols = 0;
    std::vector<K> a; // row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : nrows(r), ncols(c), a(r * c, K(0)) {}

    K& at(std::size_t i, std::size_t j) { return a[i * ncols + j]; }
    const K& at(std::size_t i, std::size_t j) const { return a[i * ncols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!(x == K(0))) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.nrows == y.nrows && x.ncols == y.ncols && x.a == y.a;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.ncols != y.nrows) throw std::invalid_argument("Matrix: size mismatch in product");
        Matrix z(x.nrows, y.ncols);
        for (std::size_t i = 0; i < x.nrows; ++i)
            for (std::size_t k = 0; k < x.ncols; ++k) {
                const K& f = x.at(i, k);
                if (f == K(0)) continue;
                for (std::size_t j = 0; j < y.ncols; ++j) {
                    const K& g = y.at(k, j);
                    if (!(g == K(0))) z.at(i, j) += f * g;
                }
            }
        return z;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.nrows != y.nrows || x.ncols != y.ncols)
            throw std::invalid_argument("Matrix: size mismatch in sum");
        Matrix z = x;
        for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
        return z;
    }
};

// In-place reduced row echelon form; returns the rank.
template <class K>
std::size_t rref(Matrix<K>& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.ncols && rank < m.nrows; ++col) {
        std::size_t piv = rank;
        while (piv < m.nrows && m.at(piv, col) == K(0)) ++piv;
        if (piv == m.nrows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.ncols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const K inv = K(1) / m.at(rank, col);
        for (std::size_t j = col; j < m.ncols; ++j) m.at(rank, j) *= inv;
        for (std::size_t i = 0; i < m.nrows; ++i) {
            if (i == rank) continue;
            const K f = m.at(i, col);
            if (f == K(0)) continue;
            for (std::size_t j = col; j < m.ncols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <class K>
std::size_t rank_of(Matrix<K> m) { return rref(m); }

// Row-space container with incremental insertion: keeps an echelonized basis,
// so span dimension and membership queries stay cheap while vectors stream in.
template <class K>
struct RowSpace {
    std::size_t ncols = 0;
    std::vector<std::vector<K>> rows; // echelon rows, pivot columns strictly increasing
    std::vector<std::size_t> pivots;

    explicit RowSpace(std::size_t cols) : ncols(cols) {}

    std::size_t dim() const { return rows.size(); }

    // Reduces v against the basis; returns true (and grows the basis) if v was independent.
    bool insert(std::vector<K> v) {
        reduce(v);
        std::size_t lead = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (!(v[j] == K(0))) { lead = j; break; }
        if (lead == ncols) return false;
        const K inv = K(1) / v[lead];
        for (std::size_t j = lead; j < ncols; ++j) v[j] *= inv;
        // keep rows ordered by pivot
        std::size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < lead) ++pos;
        rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        return true;
    }

    bool contains(std::vector<K> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!(x == K(0))) return false;
        return true;
    }

private:
    void reduce(std::vector<K>& v) const {
        if (v.size() != ncols) throw std::invalid_argument("RowSpace: vector length mismatch");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const K f = v[pivots[k]];
            if (f == K(0)) continue;
            const auto& row = rows[k];
            for (std::size_t j = pivots[k]; j < ncols; ++j) v[j] -= f * row[j];
        }
    }
};

} // namespace afc
