#include "lfnp/diagonal.hpp"

#include <algorithm>
#include <numeric>

#include "lfnp/errors.hpp"

namespace lfnp::diagonal {

using exact::BigInt;
using exact::BigRat;
using exact::IntMat;

SolutionGroup solution_group(const IntMat& M) {
    const std::size_t n = M.size();
    if (n == 0 || M[0].size() != n) throw usage_error("solution_group: square matrix required");
    SolutionGroup g;
    g.M = M;
    g.det_abs = abs(exact::mat_det(M));
    if (g.det_abs == 0) throw usage_error("solution_group: singular matrix");

    auto snf = exact::smith_normal_form(M);
    g.invariant_factors = snf.invariant_factors;

    // V^{-1} over the rationals; unimodular, so entries are integers
    std::vector<std::vector<BigRat>> aug(n, std::vector<BigRat>(2 * n, BigRat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = BigRat(snf.V[i][j]);
        aug[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && aug[piv][k] == 0) ++piv;
        if (piv == n) throw internal_error("solution_group: V not invertible (bug)");
        std::swap(aug[piv], aug[k]);
        BigRat d = aug[k][k];
        for (auto& x : aug[k]) x /= d;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || aug[i][k] == 0) continue;
            BigRat f = aug[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] -= f * aug[k][j];
        }
    }
    std::vector<std::vector<long>> vinv(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (exact::rat_den(aug[i][n + j]) != 1)
                throw internal_error("solution_group: V^{-1} not integral (bug)");
            vinv[i][j] = exact::rat_num(aug[i][n + j]).convert_to<long>();
        }

    // exponent of the group = largest invariant factor
    long L = 1;
    std::vector<long> d(n, 1);
    for (std::size_t i = 0; i < snf.invariant_factors.size(); ++i)
        d[i] = snf.invariant_factors[i].convert_to<long>();
    for (long di : d) L = std::lcm(L, di);
    g.denominator = L;

    // y ranges over prod Z/d_i; r = V^{-1} y mod 1, numerators over L
    std::vector<long> y(n, 0);
    for (;;) {
        std::vector<long> nums(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            long acc = 0;
            for (std::size_t l = 0; l < n; ++l) {
                if (d[l] == 1) continue;
                // y_l / d_l scaled by L
                long scaled = y[l] * (L / d[l]);
                acc = (acc + vinv[j][l] % L * (scaled % L)) % L;
            }
            nums[j] = ((acc % L) + L) % L;
        }
        g.elements.push_back(std::move(nums));
        std::size_t pos = 0;
        while (pos < n && y[pos] == d[pos] - 1) {
            y[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
        y[pos]++;
    }
    std::sort(g.elements.begin(), g.elements.end());
    if (BigInt(static_cast<long>(g.elements.size())) != g.det_abs)
        throw internal_error("solution_group: group order != |det| (bug)");
    return g;
}

long element_order(const SolutionGroup& g, const std::vector<long>& nums) {
    long gc = g.denominator;
    for (long v : nums) gc = std::gcd(gc, v);
    return g.denominator / gc;
}

BigRat stickelberger_ord(const BigInt& k, std::uint32_t p, std::uint32_t a) {
    BigInt q = 1;
    for (std::uint32_t i = 0; i < a; ++i) q *= p;
    if (k < 0 || k > q - 2) throw usage_error("stickelberger_ord: k out of [0, q-2]");
    BigInt digits = 0, rest = k;
    while (rest > 0) {
        digits += rest % p;
        rest /= p;
    }
    return BigRat(digits, BigInt(p - 1));
}

DiagonalNP diagonal_np(const IntMat& M, std::uint32_t p, std::uint32_t a) {
    DiagonalNP out;
    out.group = solution_group(M);
    if (out.group.det_abs % p == 0)
        throw usage_error("diagonal_np: p divides det(M); the polynomial is degenerate");

    const long L = out.group.denominator;
    BigInt qbig = 1;
    for (std::uint32_t i = 0; i < a; ++i) qbig *= p;
    const long qmodL = (qbig % L).convert_to<long>();

    // index elements for orbit walking
    std::vector<std::vector<long>> elems = out.group.elements;
    auto find_elem = [&](const std::vector<long>& e) {
        auto it = std::lower_bound(elems.begin(), elems.end(), e);
        if (it == elems.end() || *it != e)
            throw internal_error("diagonal_np: orbit left the group (bug)");
        return static_cast<std::size_t>(it - elems.begin());
    };

    std::vector<bool> seen(elems.size(), false);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (seen[i]) continue;
        Orbit orb;
        std::size_t cur = i;
        do {
            seen[cur] = true;
            orb.members.push_back(cur);
            std::vector<long> next(elems[cur].size());
            for (std::size_t j = 0; j < next.size(); ++j)
                next[j] = static_cast<long>((static_cast<long long>(elems[cur][j]) * qmodL) % L);
            cur = find_elem(next);
        } while (cur != i);
        orb.d = orb.members.size();

        // ord_q of the Gauss-sum product at one representative
        BigInt qd = 1;
        for (std::size_t j = 0; j < orb.d; ++j) qd *= qbig;
        BigInt qd1 = qd - 1;
        BigRat total = 0;
        for (long num : elems[orb.members.front()]) {
            if (num == 0) continue;
            BigInt kk = BigInt(num) * qd1 / L;
            if (BigInt(num) * qd1 % L != 0)
                throw internal_error("diagonal_np: orbit length inconsistent (bug)");
            total += stickelberger_ord(kk, p, a * static_cast<std::uint32_t>(orb.d));
        }
        // per-root slope with respect to ord_q, q the base field size
        orb.slope = total / BigRat(static_cast<long>(orb.d) * static_cast<long>(a));
        for (std::size_t j = 0; j < orb.d; ++j) out.slopes.push_back(orb.slope);
        out.orbits.push_back(std::move(orb));
    }
    std::sort(out.slopes.begin(), out.slopes.end());
    std::vector<BigRat> slopes = out.slopes;
    std::vector<BigInt> lens(slopes.size(), BigInt(1));
    out.np = exact::RatPolygon::from_slope_lengths(slopes, lens);
    return out;
}

OrdinaryCriterion diagonal_ordinary(const IntMat& M, std::uint32_t p) {
    auto snf = exact::smith_normal_form(M);
    if (snf.invariant_factors.empty()) throw usage_error("diagonal_ordinary: singular matrix");
    OrdinaryCriterion oc;
    // largest invariant factor of S_p = prime-to-p part of d_n
    BigInt dn = snf.invariant_factors.back();
    while (dn % p == 0) dn /= p;
    oc.dnp = dn;
    oc.ordinary = ((BigInt(p) - 1) % dn) == 0;
    return oc;
}

} // namespace lfnp::diagonal
