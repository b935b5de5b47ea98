#include "lfnp/dwork.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "lfnp/errors.hpp"

namespace lfnp::dwork {

using exact::BigInt;
using exact::BigRat;
using exact::FpPoly;

SplittingCoeffs splitting_coeffs(std::uint32_t p, std::size_t M) {
    // E(t) = exp(sum_{p^i <= M} t^{p^i} / p^i), truncated beyond degree M.
    std::vector<BigRat> s(M + 1, BigRat(0)); // inner series, no constant term
    {
        BigInt pi = 1, denom = 1;
        for (;;) {
            if (pi > M) break;
            s[pi.convert_to<std::size_t>()] = BigRat(1, denom);
            pi *= p;
            denom *= p;
        }
    }
    std::vector<BigRat> lambda(M + 1, BigRat(0));
    lambda[0] = 1;
    std::vector<BigRat> power(M + 1, BigRat(0));
    power[0] = 1; // s^0
    BigInt factorial = 1;
    for (std::size_t j = 1; j <= M; ++j) {
        // power <- power * s, truncated at degree M
        std::vector<BigRat> next(M + 1, BigRat(0));
        for (std::size_t i = 0; i <= M; ++i) {
            if (power[i] == 0) continue;
            for (std::size_t d = 1; i + d <= M; ++d) {
                if (s[d] == 0) continue;
                next[i + d] += power[i] * s[d];
            }
        }
        power = std::move(next);
        factorial *= static_cast<long>(j);
        bool empty = true;
        for (std::size_t i = 0; i <= M; ++i)
            if (power[i] != 0) {
                lambda[i] += power[i] / BigRat(factorial);
                empty = false;
            }
        if (empty) break;
    }

    SplittingCoeffs sc;
    sc.p = p;
    sc.lambda = std::move(lambda);
    sc.residues.resize(M + 1);
    BigInt fact = 1;
    for (std::size_t m = 0; m <= M; ++m) {
        if (m > 0) fact *= static_cast<long>(m);
        if (m <= p - 1) {
            if (sc.lambda[m] != BigRat(1, fact))
                throw internal_error("splitting_coeffs: lambda_m != 1/m! for m < p");
        } else if (m <= 2 * p - 1) {
            BigInt fmp = 1;
            for (std::size_t i = 2; i <= m - p; ++i) fmp *= static_cast<long>(i);
            if (sc.lambda[m] != BigRat(1, fact) + BigRat(1, BigInt(p) * fmp))
                throw internal_error("splitting_coeffs: closed form failed on p <= m <= 2p-1");
        }
        if (sc.lambda[m] != 0 && exact::padic_val(sc.lambda[m], BigInt(p)) < 0)
            throw internal_error("splitting_coeffs: lambda_m not p-integral");
        sc.residues[m] = exact::rat_mod_p(sc.lambda[m], p);
    }
    return sc;
}

GMonomials family_g_monomials(int n) {
    if (n < 1) throw usage_error("family_g_monomials: n >= 1");
    GMonomials g;
    g.n = n;
    std::vector<long> v(static_cast<std::size_t>(n + 1), 0);
    v[static_cast<std::size_t>(n)] = 1;
    g.V.push_back(v); // V_0 = e_{n+1}, coefficient a_{n+1}
    g.coeff_var.push_back(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int s : {+1, -1}) {
            std::vector<long> w(static_cast<std::size_t>(n + 1), 0);
            w[static_cast<std::size_t>(i)] = s;
            w[static_cast<std::size_t>(n)] = 1;
            g.V.push_back(w);
            g.coeff_var.push_back(static_cast<std::size_t>(i));
        }
    }
    return g;
}

FpPoly f_r_min_weight(const GMonomials& g, const SplittingCoeffs& sc,
                      const std::vector<long>& r, long m,
                      const std::vector<bool>* support) {
    const std::uint32_t p = sc.p;
    const int n = g.n;
    const std::size_t nvars = static_cast<std::size_t>(n + 1);
    FpPoly out(p, nvars);
    if (m < 0) return out;
    if (r.size() != nvars) throw usage_error("f_r_min_weight: point dimension mismatch");
    // every monomial of g sits at height 1, so solutions need sum u_j = r_z
    if (r[static_cast<std::size_t>(n)] != m) return out;
    long abs_sum = 0;
    for (int i = 0; i < n; ++i) abs_sum += std::labs(r[static_cast<std::size_t>(i)]);
    if (abs_sum > m) return out; // off the cone C(Delta')
    if (static_cast<std::size_t>(m) >= sc.residues.size())
        throw usage_error("f_r_min_weight: level m exceeds the lambda table");

    auto supported = [&](std::size_t j) { return !support || (*support)[j]; };

    // Solutions: u_{+i} = t_i + max(r_i,0), u_{-i} = t_i + max(-r_i,0) with
    // t_i >= 0, and u_0 = m - sum_i (2 t_i + |r_i|) >= 0 on the a_{n+1} term.
    std::vector<long> t(static_cast<std::size_t>(n), 0);
    std::vector<std::uint16_t> expo(nvars, 0);
    for (;;) {
        long used = 0;
        for (int i = 0; i < n; ++i)
            used += 2 * t[static_cast<std::size_t>(i)] + std::labs(r[static_cast<std::size_t>(i)]);
        long u0 = m - used;
        if (u0 >= 0) {
            bool ok = true;
            std::uint64_t coef = 1;
            for (int i = 0; i < n && ok; ++i) {
                long ri = r[static_cast<std::size_t>(i)];
                long up = t[static_cast<std::size_t>(i)] + std::max(ri, 0L);
                long um = t[static_cast<std::size_t>(i)] + std::max(-ri, 0L);
                if (up > 0 && !supported(static_cast<std::size_t>(2 * i + 1))) { ok = false; break; }
                if (um > 0 && !supported(static_cast<std::size_t>(2 * i + 2))) { ok = false; break; }
                coef = coef * sc.residues[static_cast<std::size_t>(up)] % p;
                coef = coef * sc.residues[static_cast<std::size_t>(um)] % p;
            }
            if (ok && u0 > 0 && !supported(0)) ok = false;
            if (ok) {
                coef = coef * sc.residues[static_cast<std::size_t>(u0)] % p;
                if (coef != 0) {
                    for (int i = 0; i < n; ++i)
                        expo[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(
                            2 * t[static_cast<std::size_t>(i)] +
                            std::labs(r[static_cast<std::size_t>(i)]));
                    expo[static_cast<std::size_t>(n)] = static_cast<std::uint16_t>(u0);
                    out.add_term(expo, coef);
                }
            }
        }
        // odometer over t, pruned by the budget m
        int pos = 0;
        for (;;) {
            if (pos == n) return out;
            t[static_cast<std::size_t>(pos)]++;
            long used2 = std::labs(r[static_cast<std::size_t>(pos)]);
            for (int i = 0; i < n; ++i)
                used2 += 2 * t[static_cast<std::size_t>(i)] +
                         (i == pos ? 0 : std::labs(r[static_cast<std::size_t>(i)]));
            if (used2 <= m) break;
            t[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
    }
}

namespace {

std::vector<std::vector<long>> points_leq(int n, int K) {
    std::vector<std::vector<long>> pts;
    std::vector<long> x(static_cast<std::size_t>(n), -K);
    for (;;) {
        long s = 0;
        for (long xi : x) s += std::labs(xi);
        if (s <= K) {
            for (long z = s; z <= K; ++z) {
                std::vector<long> pt(static_cast<std::size_t>(n + 1));
                for (int i = 0; i < n; ++i)
                    pt[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
                pt[static_cast<std::size_t>(n)] = z;
                pts.push_back(std::move(pt));
            }
        }
        int pos = 0;
        while (pos < n && x[static_cast<std::size_t>(pos)] == K) {
            x[static_cast<std::size_t>(pos)] = -K;
            ++pos;
        }
        if (pos == n) break;
        x[static_cast<std::size_t>(pos)]++;
    }
    std::sort(pts.begin(), pts.end(), [n](const auto& a, const auto& b) {
        long wa = a[static_cast<std::size_t>(n)], wb = b[static_cast<std::size_t>(n)];
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return pts;
}

} // namespace

ChainBlock chain_block_matrix(int n, std::uint32_t p, int K) {
    if (K < 0 || K > 3) throw resource_error("chain_block_matrix: only K <= 3 is supported");
    if (n < 1) throw usage_error("chain_block_matrix: n >= 1");
    ChainBlock cb;
    cb.n = n;
    cb.p = p;
    cb.K = K;
    cb.points = points_leq(n, K);
    const std::size_t N = cb.points.size();
    cb.weights.resize(N);
    for (std::size_t i = 0; i < N; ++i)
        cb.weights[i] = cb.points[i][static_cast<std::size_t>(n)];
    cb.cumulative.assign(static_cast<std::size_t>(K) + 1, 0);
    for (std::size_t i = 0; i < N; ++i)
        for (long k = cb.weights[i]; k <= K; ++k)
            cb.cumulative[static_cast<std::size_t>(k)]++;

    const GMonomials g = family_g_monomials(n);
    const SplittingCoeffs sc = splitting_coeffs(p, static_cast<std::size_t>(p) * K + 1);

    cb.entry.assign(N, std::vector<FpPoly>(N, FpPoly(p, static_cast<std::size_t>(n + 1))));
    std::vector<long> diff(static_cast<std::size_t>(n + 1));
    for (std::size_t ri = 0; ri < N; ++ri)
        for (std::size_t si = 0; si < N; ++si) {
            for (int c = 0; c <= n; ++c)
                diff[static_cast<std::size_t>(c)] =
                    static_cast<long>(p) * cb.points[si][static_cast<std::size_t>(c)] -
                    cb.points[ri][static_cast<std::size_t>(c)];
            long m = static_cast<long>(p) * cb.weights[si] - cb.weights[ri];
            cb.entry[ri][si] = f_r_min_weight(g, sc, diff, m);
        }
    return cb;
}

std::uint32_t eval_fq(const FpPoly& f, const ff::FieldTower& base,
                      const std::vector<std::uint32_t>& coeffs) {
    if (coeffs.size() != f.nvars()) throw usage_error("eval_fq: arity mismatch");
    std::vector<std::uint16_t> maxe(coeffs.size(), 0);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < coeffs.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
    std::vector<std::vector<std::uint32_t>> pw(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        pw[i].resize(static_cast<std::size_t>(maxe[i]) + 1);
        pw[i][0] = 1;
        for (std::size_t e = 1; e <= maxe[i]; ++e) pw[i][e] = base.mul(pw[i][e - 1], coeffs[i]);
    }
    std::uint32_t acc = 0;
    for (const auto& [e, c] : f.terms()) {
        std::uint32_t term = base.scalar(c);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (e[i]) term = base.mul(term, pw[i][e[i]]);
        acc = base.add(acc, term);
    }
    return acc;
}

std::uint32_t chain_determinant(const ChainBlock& cb, const ff::FieldTower& base,
                                const std::vector<std::uint32_t>& coeffs, int k) {
    if (k < 0 || k > cb.K) throw usage_error("chain_determinant: k out of range");
    const std::size_t N = cb.cumulative[static_cast<std::size_t>(k)];
    std::vector<std::vector<std::uint32_t>> M(N, std::vector<std::uint32_t>(N, 0));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) M[i][j] = eval_fq(cb.entry[i][j], base, coeffs);
    return ff::fq_det(base, std::move(M));
}

ChainVerdict chain_verdict(const ChainBlock& cb, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs,
                           bool include_endpoint_det) {
    const int n = cb.n;
    if (coeffs.size() != static_cast<std::size_t>(n + 1))
        throw usage_error("chain_verdict: expected n+1 coefficients");
    for (std::uint32_t c : coeffs)
        if (c == 0) throw usage_error("chain_verdict: coefficients must be nonzero");
    ChainVerdict v;
    v.ordinary = true;
    const int kneeded = std::max(n - 1, 0);
    const int kmax = include_endpoint_det ? std::min(n, cb.K) : kneeded;
    if (cb.K < kneeded)
        throw usage_error("chain_verdict: chain block too shallow for this n");
    for (int k = 1; k <= kmax; ++k) {
        std::uint32_t d = chain_determinant(cb, base, coeffs, k);
        v.dets.push_back(d);
        if (k <= kneeded && d == 0) v.ordinary = false;
    }
    return v;
}

ChainVerdict chain_verdict(int n, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs,
                           bool include_endpoint_det) {
    const int K = include_endpoint_det ? n : std::max(n - 1, 0);
    ChainBlock cb = chain_block_matrix(n, base.p(), std::max(K, 1));
    return chain_verdict(cb, base, coeffs, include_endpoint_det);
}

std::string ConeSpec::str() const {
    switch (kind) {
        case Kind::origin: return "origin";
        case Kind::interior: return "interior";
        case Kind::face: {
            std::ostringstream os;
            os << "face:";
            for (std::size_t i = 0; i < axes.size(); ++i) {
                if (i) os << ",";
                os << (axes[i].second > 0 ? "+" : "-") << (axes[i].first + 1);
            }
            return os.str();
        }
    }
    return "?";
}

std::vector<ConeSpec> boundary_cones(int n) {
    std::vector<ConeSpec> out;
    out.push_back({ConeSpec::Kind::origin, {}});
    for (long mask = 1; mask < (1L << n); ++mask) {
        std::vector<int> axes;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) axes.push_back(i);
        for (long smask = 0; smask < (1L << axes.size()); ++smask) {
            ConeSpec cs;
            cs.kind = ConeSpec::Kind::face;
            for (std::size_t j = 0; j < axes.size(); ++j)
                cs.axes.emplace_back(axes[j], (smask >> j) & 1 ? -1 : +1);
            out.push_back(std::move(cs));
        }
    }
    out.push_back({ConeSpec::Kind::interior, {}});
    return out;
}

ConeSpec parse_cone(const std::string& text, int n) {
    if (text == "origin") return {ConeSpec::Kind::origin, {}};
    if (text == "interior") return {ConeSpec::Kind::interior, {}};
    const std::string prefix = "face:";
    if (text.rfind(prefix, 0) != 0)
        throw usage_error("parse_cone: unknown cone '" + text + "'");
    ConeSpec cs;
    cs.kind = ConeSpec::Kind::face;
    std::stringstream ss(text.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.size() < 2 || (item[0] != '+' && item[0] != '-'))
            throw usage_error("parse_cone: bad signed axis '" + item + "'");
        int axis = std::stoi(item.substr(1)) - 1;
        if (axis < 0 || axis >= n) throw usage_error("parse_cone: axis out of range");
        cs.axes.emplace_back(axis, item[0] == '+' ? +1 : -1);
    }
    if (cs.axes.empty()) throw usage_error("parse_cone: empty face");
    std::sort(cs.axes.begin(), cs.axes.end());
    for (std::size_t i = 0; i + 1 < cs.axes.size(); ++i)
        if (cs.axes[i].first == cs.axes[i + 1].first)
            throw usage_error("parse_cone: repeated axis");
    return cs;
}

std::vector<std::vector<long>> interior_points(const ConeSpec& cone, int n, int K) {
    std::vector<std::vector<long>> pts;
    const std::size_t dim = static_cast<std::size_t>(n + 1);
    switch (cone.kind) {
        case ConeSpec::Kind::origin:
            pts.emplace_back(dim, 0);
            break;
        case ConeSpec::Kind::face: {
            // sum_j a_j (s_j e_{axis_j} + e_z), a_j >= 1, total weight <= K
            const std::size_t d = cone.axes.size();
            if (static_cast<long>(d) <= K) {
                std::vector<long> a(d, 1);
                for (;;) {
                    long tot = 0;
                    for (long v : a) tot += v;
                    if (tot <= K) {
                        std::vector<long> pt(dim, 0);
                        for (std::size_t j = 0; j < d; ++j)
                            pt[static_cast<std::size_t>(cone.axes[j].first)] =
                                cone.axes[j].second * a[j];
                        pt[static_cast<std::size_t>(n)] = tot;
                        pts.push_back(std::move(pt));
                    }
                    std::size_t pos = 0;
                    while (pos < d && a[pos] == K) {
                        a[pos] = 1;
                        ++pos;
                    }
                    if (pos == d) break;
                    a[pos]++;
                }
            }
            break;
        }
        case ConeSpec::Kind::interior: {
            for (const auto& pt : points_leq(n, K)) {
                long s = 0;
                for (int i = 0; i < n; ++i) s += std::labs(pt[static_cast<std::size_t>(i)]);
                long z = pt[static_cast<std::size_t>(n)];
                if (z >= 1 && s < z) pts.push_back(pt);
            }
            break;
        }
    }
    std::sort(pts.begin(), pts.end(), [n](const auto& x, const auto& y) {
        long wx = x[static_cast<std::size_t>(n)], wy = y[static_cast<std::size_t>(n)];
        if (wx != wy) return wx < wy;
        return x < y;
    });
    return pts;
}

std::vector<std::vector<exact::FpPoly>> interior_block(int n, std::uint32_t p,
                                                       const ConeSpec& cone, int K) {
    if (K < 0 || K > 3) throw resource_error("interior_block: only K <= 3 is supported");
    const GMonomials g = family_g_monomials(n);
    const SplittingCoeffs sc = splitting_coeffs(p, static_cast<std::size_t>(p) * K + 1);

    std::vector<bool> support(g.V.size(), false);
    switch (cone.kind) {
        case ConeSpec::Kind::origin:
            break; // g has no monomial at the origin
        case ConeSpec::Kind::interior:
            support.assign(g.V.size(), true);
            break;
        case ConeSpec::Kind::face:
            for (const auto& [axis, sign] : cone.axes)
                support[static_cast<std::size_t>(2 * axis + (sign > 0 ? 1 : 2))] = true;
            break;
    }

    auto pts = interior_points(cone, n, K);
    const std::size_t N = pts.size();
    std::vector<std::vector<FpPoly>> M(
        N, std::vector<FpPoly>(N, FpPoly(p, static_cast<std::size_t>(n + 1))));
    std::vector<long> diff(static_cast<std::size_t>(n + 1));
    for (std::size_t ri = 0; ri < N; ++ri)
        for (std::size_t si = 0; si < N; ++si) {
            for (int c = 0; c <= n; ++c)
                diff[static_cast<std::size_t>(c)] =
                    static_cast<long>(p) * pts[si][static_cast<std::size_t>(c)] -
                    pts[ri][static_cast<std::size_t>(c)];
            long m = static_cast<long>(p) * pts[si][static_cast<std::size_t>(n)] -
                     pts[ri][static_cast<std::size_t>(n)];
            M[ri][si] = f_r_min_weight(g, sc, diff, m, &support);
        }
    return M;
}

} // namespace lfnp::dwork
