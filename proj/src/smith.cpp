#include "lfnp/smith.hpp"

#include <cstdlib>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

static IntMat identity(std::size_t n) {
    IntMat I(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
    const std::size_t n = A.size(), m = B[0].size(), k = B.size();
    IntMat C(n, std::vector<BigInt>(m, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (A[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
        }
    return C;
}

BigInt mat_det(const IntMat& M) {
    // Fraction-free Gaussian elimination (Bareiss).
    const std::size_t n = M.size();
    if (n == 0) return 1;
    IntMat a = M;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

namespace {

// Keeps the factorization M = U * D * V in sync while reducing D.
struct Reducer {
    IntMat D, U, V;
    std::size_t rows, cols;

    explicit Reducer(const IntMat& M)
        : D(M), U(identity(M.size())), V(identity(M[0].size())),
          rows(M.size()), cols(M[0].size()) {}

    void row_add(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t j = 0; j < cols; ++j) D[dst][j] += f * D[src][j];
        for (std::size_t j = 0; j < rows; ++j) U[j][src] -= f * U[j][dst];
    }
    void col_add(std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t i = 0; i < rows; ++i) D[i][dst] += f * D[i][src];
        for (std::size_t i = 0; i < cols; ++i) V[src][i] -= f * V[dst][i];
    }
    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(D[a], D[b]);
        for (std::size_t j = 0; j < rows; ++j) std::swap(U[j][a], U[j][b]);
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(D[i][a], D[i][b]);
        std::swap(V[a], V[b]);
    }
    void row_neg(std::size_t a) {
        for (std::size_t j = 0; j < cols; ++j) D[a][j] = -D[a][j];
        for (std::size_t j = 0; j < rows; ++j) U[j][a] = -U[j][a];
    }

    void diagonalize() {
        const std::size_t t = std::min(rows, cols);
        for (std::size_t k = 0; k < t; ++k) {
            for (;;) {
                // pivot: smallest nonzero |entry| in the trailing block
                std::size_t pi = rows, pj = cols;
                BigInt best = 0;
                for (std::size_t i = k; i < rows; ++i)
                    for (std::size_t j = k; j < cols; ++j) {
                        if (D[i][j] == 0) continue;
                        BigInt a = abs(D[i][j]);
                        if (best == 0 || a < best) { best = a; pi = i; pj = j; }
                    }
                if (best == 0) return; // trailing block all zero
                row_swap(k, pi);
                col_swap(k, pj);

                bool again = false;
                for (std::size_t i = k + 1; i < rows && !again; ++i)
                    if (D[i][k] % D[k][k] != 0) {
                        row_add(i, k, -(D[i][k] / D[k][k]));
                        again = true; // remainder is a smaller pivot candidate
                    }
                for (std::size_t j = k + 1; j < cols && !again; ++j)
                    if (D[k][j] % D[k][k] != 0) {
                        col_add(j, k, -(D[k][j] / D[k][k]));
                        again = true;
                    }
                if (again) continue;

                for (std::size_t i = k + 1; i < rows; ++i)
                    if (D[i][k] != 0) row_add(i, k, -(D[i][k] / D[k][k]));
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (D[k][j] != 0) col_add(j, k, -(D[k][j] / D[k][k]));
                if (D[k][k] < 0) row_neg(k);
                break;
            }
        }
    }
};

} // namespace

SmithResult smith_normal_form(const IntMat& M) {
    if (M.empty() || M[0].empty()) throw usage_error("smith_normal_form: empty matrix");
    const std::size_t cols = M[0].size();
    for (const auto& r : M)
        if (r.size() != cols) throw usage_error("smith_normal_form: ragged matrix");

    Reducer red(M);
    const std::size_t t = std::min(red.rows, red.cols);
    for (;;) {
        red.diagonalize();
        bool chain_ok = true;
        for (std::size_t k = 0; k + 1 < t && chain_ok; ++k) {
            if (red.D[k][k] == 0 || red.D[k + 1][k + 1] == 0) continue;
            if (red.D[k + 1][k + 1] % red.D[k][k] != 0) {
                // pull d_{k+1} into column k; the next pass replaces the pair
                // by (gcd, lcm)
                red.col_add(k, k + 1, 1);
                chain_ok = false;
            }
        }
        if (chain_ok) break;
    }

    SmithResult res;
    res.D = red.D;
    res.U = red.U;
    res.V = red.V;
    for (std::size_t k = 0; k < t; ++k)
        if (red.D[k][k] != 0) res.invariant_factors.push_back(red.D[k][k]);
    return res;
}

} // namespace lfnp::exact
