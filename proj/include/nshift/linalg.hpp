#pragma once

#include <cassert>
#include <vector>

namespace nshift {

/// Gaussian elimination over a field K (needs is_zero(), arithmetic, K(1)).
/// Solves A x = b; returns false when A is singular.
template <class K>
bool field_solve(std::vector<std::vector<K>> a, std::vector<K> b, std::vector<K>* x) {
    const int n = (int)a.size();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            K f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
            b[r] = b[r] - f * b[col];
        }
    }
    x->assign(n, K());
    for (int r = n - 1; r >= 0; --r) {
        K acc = b[r];
        for (int c = r + 1; c < n; ++c) acc = acc - a[r][c] * (*x)[c];
        (*x)[r] = acc / a[r][r];
    }
    return true;
}

/// Basis of the (right) kernel of a rectangular matrix over a field.
template <class K>
std::vector<std::vector<K>> field_nullspace(std::vector<std::vector<K>> a, int ncols, const K& one) {
    int nrows = (int)a.size();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int piv = -1;
        for (int r = row; r < nrows; ++r) {
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        K inv = one / a[row][col];
        for (int c = col; c < ncols; ++c) a[row][c] = a[row][c] * inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            K f = a[r][col];
            for (int c = col; c < ncols; ++c) a[r][c] = a[r][c] - f * a[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (int freec = 0; freec < ncols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<K> v(ncols, K());
        v[freec] = one;
        for (int r = 0; r < (int)pivot_col.size(); ++r) v[pivot_col[r]] = K() - a[r][freec];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace nshift
