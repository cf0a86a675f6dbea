#pragma once

#include <vector>

#include "ellkzb/rational.hpp"

namespace ellkzb {

struct LinSolveResult {
    bool consistent = false;
    std::vector<Rat> x;         // particular solution, free variables = 0
    std::vector<bool> is_free;  // per variable
};

// Exact Gauss-Jordan on A x = b.
inline LinSolveResult solve_linear_system(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    LinSolveResult res;
    res.x.assign(cols, Rat(0));
    res.is_free.assign(cols, true);

    size_t r = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[r]);
        std::swap(b[pr], b[r]);
        Rat inv = Rat(1) / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        res.is_free[c] = false;
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return res;  // inconsistent
    res.consistent = true;
    for (size_t i = 0; i < pivot_col.size(); ++i) res.x[pivot_col[i]] = b[i];
    return res;
}

}  // namespace ellkzb
