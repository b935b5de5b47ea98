#include "lfnp/lp.hpp"

#include <cstddef>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

namespace {

struct Tableau {
    std::size_t rows, cols;             // cols excludes the rhs
    std::vector<std::vector<BigRat>> t; // rows x (cols + 1), last column = rhs
    std::vector<std::size_t> basis;     // basis[i] = column basic in row i

    void pivot(std::size_t r, std::size_t c) {
        BigRat piv = t[r][c];
        for (auto& v : t[r]) v /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c] == 0) continue;
            BigRat f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Bland: entering = smallest column with negative reduced cost,
    // leaving = smallest-ratio row, ties by smallest basis column.
    // Returns the objective value, restricted to columns < ncols_active.
    BigRat run(const std::vector<BigRat>& cost, std::size_t ncols_active) {
        for (;;) {
            std::vector<BigRat> y(rows);
            for (std::size_t i = 0; i < rows; ++i) y[i] = cost[basis[i]];
            std::size_t enter = ncols_active;
            for (std::size_t j = 0; j < ncols_active; ++j) {
                BigRat red = cost[j];
                for (std::size_t i = 0; i < rows; ++i)
                    if (t[i][j] != 0) red -= y[i] * t[i][j];
                if (red < 0) { enter = j; break; }
            }
            if (enter == ncols_active) {
                BigRat obj = 0;
                for (std::size_t i = 0; i < rows; ++i) obj += y[i] * t[i][cols];
                return obj;
            }
            std::size_t leave = rows;
            BigRat best_ratio = 0;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0) continue;
                BigRat ratio = t[i][cols] / t[i][enter];
                if (leave == rows || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows) throw internal_error("simplex: unbounded program");
            pivot(leave, enter);
        }
    }
};

} // namespace

std::optional<BigRat> simplex_min(const std::vector<std::vector<BigRat>>& A,
                                  const std::vector<BigRat>& b,
                                  const std::vector<BigRat>& c) {
    const std::size_t m = A.size();
    if (b.size() != m) throw usage_error("simplex_min: |b| != rows");
    const std::size_t n = m ? A[0].size() : c.size();
    if (c.size() != n) throw usage_error("simplex_min: |c| != cols");

    Tableau tab;
    tab.rows = m;
    tab.cols = n + m; // artificials appended
    tab.t.assign(m, std::vector<BigRat>(tab.cols + 1, BigRat(0)));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? -A[i][j] : A[i][j];
        tab.t[i][tab.cols] = flip ? -b[i] : b[i];
        tab.t[i][n + i] = 1;
        tab.basis[i] = n + i;
    }

    // phase 1
    std::vector<BigRat> cost1(tab.cols, BigRat(0));
    for (std::size_t j = n; j < tab.cols; ++j) cost1[j] = 1;
    BigRat v1 = tab.run(cost1, tab.cols);
    if (v1 != 0) return std::nullopt;

    // drive remaining artificials out of the basis; drop redundant rows so
    // no artificial can re-enter during phase 2
    for (std::size_t i = 0; i < tab.rows;) {
        if (tab.basis[i] < n) { ++i; continue; }
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.t[i][j] != 0) { enter = j; break; }
        if (enter < n) {
            tab.pivot(i, enter);
            ++i;
        } else {
            tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
            tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
            --tab.rows;
        }
    }

    // phase 2, artificials excluded from entering
    std::vector<BigRat> cost2(tab.cols, BigRat(0));
    for (std::size_t j = 0; j < n; ++j) cost2[j] = c[j];
    // a leftover artificial basis variable sits at zero; costs stay zero
    BigRat v2 = tab.run(cost2, n);
    return v2;
}

} // namespace lfnp::exact
