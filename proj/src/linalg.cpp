#include "secondary/linalg.hpp"

#include <utility>

namespace secondary {

namespace {

struct Echelon {
    QMat mat;
    std::vector<int> pivotCol;  // per pivot row
    int sign = 1;               // parity of row swaps (square matrices)
};

/// Row-reduce to reduced row echelon form with first-nonzero pivoting.
Echelon reduce(QMat a) {
    Echelon e;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) { std::swap(a[piv], a[r]); e.sign = -e.sign; }
        Rational inv = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        e.pivotCol.push_back(c);
        ++r;
    }
    e.mat = std::move(a);
    return e;
}

}  // namespace

int rank_of(QMat a) { return static_cast<int>(reduce(std::move(a)).pivotCol.size()); }

std::optional<QVec> solve_any(QMat a, QVec b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < rows; ++i) a[i].push_back(b[i]);
    Echelon e = reduce(std::move(a));
    // Inconsistent iff a pivot lands in the appended column.
    for (int col : e.pivotCol)
        if (col == cols) return std::nullopt;
    QVec x(static_cast<size_t>(cols), Rational(0));
    for (size_t r = 0; r < e.pivotCol.size(); ++r)
        x[static_cast<size_t>(e.pivotCol[r])] = e.mat[r][static_cast<size_t>(cols)];
    return x;
}

std::vector<QVec> kernel_basis(QMat a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Echelon e = reduce(std::move(a));
    std::vector<bool> isPivot(static_cast<size_t>(cols), false);
    for (int c : e.pivotCol) isPivot[static_cast<size_t>(c)] = true;
    std::vector<QVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (isPivot[static_cast<size_t>(free)]) continue;
        QVec v(static_cast<size_t>(cols), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t r = 0; r < e.pivotCol.size(); ++r)
            v[static_cast<size_t>(e.pivotCol[r])] = -e.mat[r][static_cast<size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

int det_sign(QMat a) {
    const int n = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw WorkbenchError("det_sign needs a square matrix");
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(a[piv], a[c]); sign = -sign; }
        sign *= sign_of(a[c][c]);
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return sign;
}

}  // namespace secondary
