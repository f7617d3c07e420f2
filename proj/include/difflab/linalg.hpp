// Small dense exact linear algebra over rationals: solve, kernel, matvec.
// Dimensions here are tiny (at most d^2 = 16 for the pair systems), so plain
// Gauss-Jordan with exact pivots is the right tool.
#pragma once

#include "difflab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace difflab {

struct RatMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    RatVec a;  // row-major

    RatMat() = default;
    RatMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rational& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static RatMat identity(std::size_t n) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const RatMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline RatVec matvec(const RatMat& m, const RatVec& x) {
    if (x.size() != m.cols) throw std::invalid_argument("matvec: size mismatch");
    RatVec y(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c) != 0) acc += m.at(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

// Reduced row echelon form in place; returns pivot column per pivot row.
// Pivots only in columns < col_limit (so augmented columns stay passive).
inline std::vector<std::size_t> rref(RatMat& m, std::size_t col_limit = SIZE_MAX) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    const std::size_t last_col = std::min(col_limit, m.cols);
    for (std::size_t col = 0; col < last_col && row < m.rows; ++col) {
        std::size_t p = row;
        while (p < m.rows && m.at(p, col) == 0) ++p;
        if (p == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rational f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Unique solution of A x = b, or nullopt if A is singular / system inconsistent.
inline std::optional<RatVec> solve(const RatMat& A, const RatVec& b) {
    if (A.rows != b.size()) throw std::invalid_argument("solve: size mismatch");
    RatMat aug(A.rows, A.cols + 1);
    for (std::size_t r = 0; r < A.rows; ++r) {
        for (std::size_t c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols) = b[r];
    }
    auto pivots = rref(aug, A.cols);
    for (std::size_t r = pivots.size(); r < A.rows; ++r)
        if (aug.at(r, A.cols) != 0) return std::nullopt;  // inconsistent
    if (pivots.size() != A.cols) return std::nullopt;     // underdetermined
    RatVec x(A.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, A.cols);
    return x;
}

// Basis of the null space of A.
inline std::vector<RatVec> kernel_basis(const RatMat& A) {
    RatMat m = A;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(A.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < A.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(A.cols);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational dot(const RatVec& x, const RatVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && y[i] != 0) acc += x[i] * y[i];
    return acc;
}

}  // namespace difflab
