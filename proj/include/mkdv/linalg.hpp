// Exact linear algebra helpers: ring determinants (for Wronskians of
// polynomials), Wronskian matrices, and exact linear solving over a field.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace mkdv {

// Determinant of a square matrix over a commutative ring R (only +, -, *
// are used).  Expansion by minors over column subsets, memoized: O(n * 2^n)
// ring multiplications, which is fine for the matrix sizes that occur here
// (Wronskians of at most ~10 functions).
template <class R>
R ring_determinant(const std::vector<std::vector<R>>& m) {
    size_t n = m.size();
    if (n == 0) return R(1);
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("ring_determinant: not square");
    if (n > 20) throw std::invalid_argument("ring_determinant: matrix too large");
    // minor_of[mask] = determinant of rows 0..popcount(mask)-1, columns in mask.
    std::unordered_map<std::uint32_t, R> cur, next;
    cur[0] = R(1);
    for (size_t row = 0; row < n; ++row) {
        next.clear();
        for (const auto& [mask, det] : cur) {
            for (size_t col = 0; col < n; ++col) {
                std::uint32_t bit = std::uint32_t(1) << col;
                if (mask & bit) continue;
                // Expansion along the last placed row: cofactor sign is
                // (-1)^(row + position of col among the chosen columns).
                int below = __builtin_popcount(mask & (bit - 1));
                R term = det * m[row][col];
                if ((int(row) + below) % 2 == 1) term = R(0) - term;
                auto it = next.find(mask | bit);
                if (it == next.end()) next.emplace(mask | bit, term);
                else it->second = it->second + term;
            }
        }
        cur.swap(next);
    }
    return cur[(n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1)];
}

// Wronskian matrix rows f_i, columns successive derivatives (0..n-1).
// R needs a .derivative() method in addition to the ring operations.
template <class R>
std::vector<std::vector<R>> wronskian_matrix(const std::vector<R>& fs) {
    if (fs.empty()) throw std::invalid_argument("wronskian: empty list");
    size_t n = fs.size();
    std::vector<std::vector<R>> m(n);
    for (size_t i = 0; i < n; ++i) {
        m[i].reserve(n);
        m[i].push_back(fs[i]);
        for (size_t j = 1; j < n; ++j) m[i].push_back(m[i].back().derivative());
    }
    return m;
}

template <class R>
R wronskian(const std::vector<R>& fs) {
    return ring_determinant(wronskian_matrix(fs));
}

// Result of exact Gaussian elimination over a field K.
template <class K>
struct LinSolveResult {
    enum Status { kUnique, kUnderdetermined, kInconsistent };
    Status status = kInconsistent;
    std::vector<K> solution;             // a particular solution when consistent
    std::vector<std::vector<K>> kernel;  // basis of the homogeneous solution space
    int rank = 0;

    bool consistent() const { return status != kInconsistent; }
};

// Solves A x = b exactly over the field K.  A may be rectangular; when the
// system is consistent but singular the result carries one particular
// solution plus a kernel basis.
template <class K>
LinSolveResult<K> linear_solve(std::vector<std::vector<K>> a, std::vector<K> b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("linear_solve: ragged matrix");
    if (b.size() != rows) throw std::invalid_argument("linear_solve: rhs size mismatch");

    std::vector<int> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        K inv = K(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] = inv * a[r][j];
        b[r] = inv * b[r];
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            K f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col_of_row.push_back(int(c));
        ++r;
    }

    LinSolveResult<K> res;
    res.rank = int(r);
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) { res.status = LinSolveResult<K>::kInconsistent; return res; }

    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_col_of_row) is_pivot[pc] = true;

    res.solution.assign(cols, K(0));
    for (size_t i = 0; i < r; ++i) res.solution[pivot_col_of_row[i]] = b[i];

    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(cols, K(0));
        v[c] = K(1);
        for (size_t i = 0; i < r; ++i) v[pivot_col_of_row[i]] = K(0) - a[i][c];
        res.kernel.push_back(std::move(v));
    }
    res.status = res.kernel.empty() ? LinSolveResult<K>::kUnique
                                    : LinSolveResult<K>::kUnderdetermined;
    return res;
}

} // namespace mkdv
