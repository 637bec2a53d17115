#pragma once

#include <optional>
#include <vector>

#include "comprol/rational.hpp"

namespace comprol {

// Dense exact linear algebra. Small systems only: per-edge flow systems and
// cycle-space normal equations stay well under 10^2 unknowns.
using DenseMatrix = std::vector<std::vector<Rational>>;

// Solves A x = b by Gaussian elimination over the rationals. Returns one
// particular solution (free variables set to 0), or nullopt if the system is
// inconsistent. A may be rectangular; rank-deficient systems are fine.
inline std::optional<std::vector<Rational>> solve_linear(DenseMatrix a,
                                                         std::vector<Rational> b) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    if (static_cast<int>(b.size()) != m) throw InvalidInput("rhs length mismatch");

    std::vector<int> pivot_col_of_row;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pivot = -1;
        for (int r = row; r < m; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[row], a[pivot]);
        std::swap(b[row], b[pivot]);
        const Rational inv = Rational(1) / a[row][col];
        for (int c = col; c < n; ++c) a[row][c] *= inv;
        b[row] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || a[r][col] == 0) continue;
            const Rational factor = a[r][col];
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[row][c];
            b[r] -= factor * b[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int r = row; r < m; ++r)
        if (b[r] != 0) return std::nullopt;

    std::vector<Rational> x(n, Rational(0));
    for (int r = 0; r < row; ++r) x[pivot_col_of_row[r]] = b[r];
    return x;
}

inline int rank(DenseMatrix a) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pivot = -1;
        for (int r = row; r < m; ++r) {
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(a[row], a[pivot]);
        for (int r = row + 1; r < m; ++r) {
            if (a[r][col] == 0) continue;
            const Rational factor = a[r][col] / a[row][col];
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[row][c];
        }
        ++row;
    }
    return row;
}

}  // namespace comprol
