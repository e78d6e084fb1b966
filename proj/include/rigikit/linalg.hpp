#pragma once

// Dense exact linear algebra over a Field: row reduction, rank, kernel.

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rigikit/field.hpp"

namespace rigikit {

template <Field F>
using Vec = std::vector<typename F::value_type>;

/// Row-major dense matrix.
template <Field F>
class Matrix {
public:
    using value_type = typename F::value_type;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const F& field)
        : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<value_type> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const value_type> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const value_type> values) {
        if (rows_ == 0 && cols_ == 0) cols_ = values.size();
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    /// Column count fixed up front for matrices that may end with zero rows.
    void set_cols(std::size_t c) {
        if (rows_ != 0 && c != cols_) throw std::logic_error("set_cols on a non-empty matrix");
        cols_ = c;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
template <Field F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m, const F& f) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        auto inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Rank by forward elimination only (cheaper than full rref).
template <Field F>
std::size_t rank_of(Matrix<F> m, const F& f) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        auto inv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (f.is_zero(m(i, c))) continue;
            auto factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

/// Rank of a list of equal-length vectors.
template <Field F>
std::size_t rank_of_vectors(const std::vector<Vec<F>>& vs, std::size_t dim, const F& f) {
    Matrix<F> m(0, dim, f);
    m.set_cols(dim);
    for (const auto& v : vs) m.append_row(v);
    return rank_of(std::move(m), f);
}

/// Basis of {x : M x = 0}.  Free columns are taken in increasing index
/// order, and each basis vector has a 1 in its own free column.
template <Field F>
std::vector<Vec<F>> kernel_of(Matrix<F> m, const F& f) {
    auto pivots = rref_in_place(m, f);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <Field F>
Vec<F> mat_vec(const Matrix<F>& m, std::span<const typename F::value_type> x, const F& f) {
    Vec<F> y(m.rows(), f.zero());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto acc = f.zero();
        for (std::size_t c = 0; c < m.cols(); ++c) acc = f.add(acc, f.mul(m(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

template <Field F>
bool is_zero_vector(std::span<const typename F::value_type> v, const F& f) {
    return std::all_of(v.begin(), v.end(), [&](const auto& a) { return f.is_zero(a); });
}

template <Field F>
typename F::value_type dot(std::span<const typename F::value_type> a,
                           std::span<const typename F::value_type> b, const F& f) {
    auto acc = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

/// Determinant by elimination.
template <Field F>
typename F::value_type determinant(Matrix<F> m, const F& f) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    auto det = f.one();
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && f.is_zero(m(p, c))) ++p;
        if (p == n) return f.zero();
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        auto inv = f.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (f.is_zero(m(i, c))) continue;
            auto factor = f.mul(m(i, c), inv);
            for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
        }
    }
    return det;
}

template <Field F, class R>
Vec<F> random_vector(std::size_t n, const F& f, R& rng) {
    Vec<F> v(n);
    for (auto& x : v) x = f.random(rng);
    return v;
}

/// Random linear combination of the given basis vectors.
template <Field F, class R>
Vec<F> random_combination(const std::vector<Vec<F>>& basis, std::size_t dim, const F& f, R& rng) {
    Vec<F> v(dim, f.zero());
    for (const auto& b : basis) {
        auto c = f.random(rng);
        for (std::size_t i = 0; i < dim; ++i) v[i] = f.add(v[i], f.mul(c, b[i]));
    }
    return v;
}

}  // namespace rigikit
