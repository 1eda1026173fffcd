#pragma once

#include <utility>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/rational.hpp"

namespace nambu::linalg {

struct AffineSolution {
    std::vector<Rational> particular;               // free variables set to zero
    std::vector<std::vector<Rational>> null_basis;  // one vector per free column
};

// Gauss-Jordan over the rationals; rows need not be independent. Throws
// InconsistentSystem when b lies outside the column span of a.
inline AffineSolution solve_affine(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && a[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(a[pr], a[r]);
        std::swap(b[pr], b[r]);
        const Rational inv = a[r][c];
        for (auto& v : a[r]) v /= inv;
        b[r] /= inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r || a[rr][c] == 0) continue;
            const Rational f = a[rr][c];
            for (std::size_t cc = 0; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
            b[rr] -= f * b[r];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (b[rr] != 0) throw InconsistentSystem("solve_affine: no solution");

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;

    AffineSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) sol.particular[pivot_cols[i]] = b[i];
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> n(cols, Rational(0));
        n[c] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) n[pivot_cols[i]] = -a[i][c];
        sol.null_basis.push_back(std::move(n));
    }
    return sol;
}

}  // namespace nambu::linalg
