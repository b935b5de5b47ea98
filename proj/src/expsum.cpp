#include "lfnp/expsum.hpp"

#include <algorithm>
#include <cmath>

#include "lfnp/errors.hpp"
#include "lfnp/hasse.hpp"

namespace lfnp::expsum {

using exact::BigInt;
using exact::BigRat;
using exact::CycInt;
using exact::CycRat;
using exact::RatPolygon;
using exact::Valuation;

void FamilyCoeffs::validate() const {
    if (n < 1) throw usage_error("FamilyCoeffs: n >= 1");
    if (values.size() != static_cast<std::size_t>(n + 1))
        throw usage_error("FamilyCoeffs: expected n+1 coefficients");
    std::uint64_t qb = 1;
    for (std::uint32_t i = 0; i < a; ++i) qb *= p;
    for (std::uint32_t v : values) {
        if (v == 0) throw usage_error("FamilyCoeffs: coefficients must be nonzero");
        if (v >= qb) throw usage_error("FamilyCoeffs: coefficient index outside F_q");
    }
}

LaurentPoly family_full_poly(const FamilyCoeffs& fc) {
    fc.validate();
    LaurentPoly f = family_bottom_poly(fc);
    LaurentTerm inv;
    inv.coeff = 1;
    inv.expo.assign(static_cast<std::size_t>(fc.n + 1), 0);
    inv.expo[static_cast<std::size_t>(fc.n)] = -1;
    f.terms.push_back(std::move(inv));
    return f;
}

LaurentPoly family_bottom_poly(const FamilyCoeffs& fc) {
    fc.validate();
    LaurentPoly f;
    f.nvars = fc.n + 1;
    for (int i = 0; i < fc.n; ++i) {
        for (int s : {+1, -1}) {
            LaurentTerm t;
            t.coeff = fc.values[static_cast<std::size_t>(i)];
            t.expo.assign(static_cast<std::size_t>(fc.n + 1), 0);
            t.expo[static_cast<std::size_t>(i)] = s;
            t.expo[static_cast<std::size_t>(fc.n)] = 1;
            f.terms.push_back(std::move(t));
        }
    }
    LaurentTerm top;
    top.coeff = fc.values[static_cast<std::size_t>(fc.n)];
    top.expo.assign(static_cast<std::size_t>(fc.n + 1), 0);
    top.expo[static_cast<std::size_t>(fc.n)] = 1;
    f.terms.push_back(std::move(top));
    return f;
}

CycInt exp_sum_naive(const ff::FieldTower& tower, const LaurentPoly& f,
                     std::uint64_t loop_cap) {
    const std::uint32_t p = tower.p();
    const std::uint64_t units = tower.size() - 1;
    std::uint64_t total = 1;
    for (int i = 0; i < f.nvars; ++i) {
        if (total > loop_cap / units + 1)
            throw resource_error("exp_sum_naive: torus too large for the configured cap");
        total *= units;
    }
    if (total > loop_cap)
        throw resource_error("exp_sum_naive: torus too large for the configured cap");

    // embedded term data: log of coefficient, exponent row
    const long ord = static_cast<long>(units);
    struct Term {
        long clog;
        std::vector<long> expo;
    };
    std::vector<Term> terms;
    terms.reserve(f.terms.size());
    for (const auto& t : f.terms) {
        Term tt;
        std::uint32_t c = tower.embed_base(t.coeff);
        if (c == 0) throw usage_error("exp_sum_naive: zero coefficient");
        tt.clog = static_cast<long>(tower.log(c));
        tt.expo.assign(t.expo.begin(), t.expo.end());
        terms.push_back(std::move(tt));
    }

    std::vector<std::int64_t> counts(p, 0);
    std::vector<long> logs(static_cast<std::size_t>(f.nvars), 0);
    for (;;) {
        std::uint32_t val = 0;
        for (const auto& t : terms) {
            long e = t.clog;
            for (int i = 0; i < f.nvars; ++i)
                e += t.expo[static_cast<std::size_t>(i)] * logs[static_cast<std::size_t>(i)];
            e %= ord;
            if (e < 0) e += ord;
            val = tower.add(val, tower.exp(static_cast<std::uint32_t>(e)));
        }
        counts[tower.trace(val)]++;
        int pos = 0;
        while (pos < f.nvars && logs[static_cast<std::size_t>(pos)] == ord - 1) {
            logs[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == f.nvars) break;
        logs[static_cast<std::size_t>(pos)]++;
    }
    return exact::cyc_from_residue_vector(counts, p);
}

CycInt SalieTable::at(std::uint32_t t) const {
    const std::uint32_t p = tower->p();
    std::vector<std::int64_t> row(raw.begin() + static_cast<std::ptrdiff_t>(std::uint64_t(t) * p),
                                  raw.begin() + static_cast<std::ptrdiff_t>(std::uint64_t(t) * p + p));
    return exact::cyc_from_residue_vector(row, p);
}

CycInt exp_sum_family(const FamilyCoeffs& fc, const SalieTable& table) {
    fc.validate();
    const auto& tw = *table.tower;
    if (tw.p() != fc.p || tw.a() != fc.a)
        throw usage_error("exp_sum_family: table built for a different field");
    const std::uint32_t p = fc.p;
    const std::uint32_t q = tw.size();
    const long ord = static_cast<long>(q) - 1;
    const int n = fc.n;

    // int64 fast path bound: p^{n-1} * (q-1)^{n+1} must stay below 2^62
    long double bound = 1.0L;
    for (int i = 0; i < n - 1; ++i) bound *= p;
    for (int i = 0; i < n + 1; ++i) bound *= static_cast<long double>(q - 1);
    const bool fast = bound < 4.6e18L;

    std::vector<long> clog(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        clog[static_cast<std::size_t>(i)] =
            static_cast<long>(tw.log(tw.embed_base(fc.values[static_cast<std::size_t>(i)])));

    auto run = [&](auto zero_value) -> CycInt {
        using Acc = decltype(zero_value);
        std::vector<Acc> acc(p, zero_value);
        std::vector<Acc> prod(p), next(p);
        for (long g = 0; g < ord; ++g) {
            // additive character at a_{n+1} z + 1/z
            std::uint32_t t1 = tw.trace(tw.exp(static_cast<std::uint32_t>(
                (clog[static_cast<std::size_t>(n)] + g) % ord)));
            std::uint32_t t2 = tw.trace(tw.exp(static_cast<std::uint32_t>((ord - g) % ord)));
            std::uint32_t shift = (t1 + t2) % p;
            // product of the K(a_i z)
            {
                std::uint32_t idx = tw.exp(static_cast<std::uint32_t>((clog[0] + g) % ord));
                const std::int64_t* row = table.raw.data() + std::uint64_t(idx) * p;
                for (std::uint32_t c = 0; c < p; ++c) prod[c] = Acc(row[c]);
            }
            for (int i = 1; i < n; ++i) {
                std::uint32_t idx = tw.exp(static_cast<std::uint32_t>(
                    (clog[static_cast<std::size_t>(i)] + g) % ord));
                const std::int64_t* row = table.raw.data() + std::uint64_t(idx) * p;
                for (std::uint32_t c = 0; c < p; ++c) next[c] = zero_value;
                for (std::uint32_t c1 = 0; c1 < p; ++c1) {
                    if (prod[c1] == zero_value) continue;
                    for (std::uint32_t c2 = 0; c2 < p; ++c2) {
                        if (row[c2] == 0) continue;
                        std::uint32_t c = c1 + c2 >= p ? c1 + c2 - p : c1 + c2;
                        next[c] += prod[c1] * Acc(row[c2]);
                    }
                }
                std::swap(prod, next);
            }
            for (std::uint32_t c = 0; c < p; ++c) {
                std::uint32_t cc = c + shift >= p ? c + shift - p : c + shift;
                acc[cc] += prod[c];
            }
        }
        std::vector<BigInt> raw(p);
        for (std::uint32_t c = 0; c < p; ++c) raw[c] = BigInt(acc[c]);
        return exact::cyc_from_residue_vector(raw, p);
    };

    if (fast) return run(std::int64_t(0));
    return run(BigInt(0));
}

PowerSums power_sums_family(const FamilyCoeffs& fc, std::uint32_t kmax, SalieCache& cache) {
    fc.validate();
    PowerSums ps;
    ps.coeffs = fc;
    for (std::uint32_t k = 1; k <= kmax; ++k)
        ps.S.push_back(exp_sum_family(fc, cache.get(k)));
    return ps;
}

std::vector<CycInt> lpoly_coeffs_from_power_sums(const std::vector<CycInt>& S, int nvars,
                                                 std::size_t m) {
    if (S.size() < m) throw usage_error("lpoly_coeffs_from_power_sums: need S_1..S_m");
    if (m == 0) throw usage_error("lpoly_coeffs_from_power_sums: m >= 1");
    const std::uint32_t p = S[0].p();
    const int sign = nvars % 2 == 0 ? +1 : -1; // P_k = (-1)^{nvars} S_k

    std::vector<CycRat> P; // P[0] unused
    P.emplace_back(p);
    for (std::size_t k = 1; k <= m; ++k) {
        CycRat v(S[k - 1]);
        if (sign < 0) v = CycRat(p) - v;
        P.push_back(std::move(v));
    }

    std::vector<CycRat> e;
    e.push_back(CycRat(CycInt::integer(p, 1)));
    std::vector<CycInt> A;
    A.push_back(CycInt::integer(p, 1));
    for (std::size_t j = 1; j <= m; ++j) {
        CycRat sum(p);
        for (std::size_t i = 1; i <= j; ++i) {
            CycRat term = e[j - i] * P[i];
            if (i % 2 == 0) term = CycRat(p) - term;
            sum = sum + term;
        }
        CycRat ej = sum.divided_by(BigInt(static_cast<long>(j)));
        if (!ej.is_integral())
            throw internal_error(
                "lpoly_coeffs_from_power_sums: non-integral coefficient (sign convention or "
                "input is wrong)");
        e.push_back(ej);
        CycInt Aj = ej.to_int();
        if (j % 2 == 1) Aj = -Aj;
        A.push_back(std::move(Aj));
    }
    return A;
}

LPoly l_poly_from_power_sums(const PowerSums& ps, std::size_t m) {
    LPoly L;
    L.n = ps.coeffs.n;
    L.p = ps.coeffs.p;
    L.a = ps.coeffs.a;
    L.A = lpoly_coeffs_from_power_sums(ps.S, ps.coeffs.n + 1, m);
    return L;
}

std::vector<Valuation> ordq_profile(const LPoly& L) {
    std::vector<Valuation> out;
    out.reserve(L.A.size());
    for (const auto& c : L.A) out.push_back(exact::ord_q(c, L.a));
    return out;
}

RatPolygon q_adic_newton_polygon(const LPoly& L) {
    std::vector<std::pair<BigRat, BigRat>> pts;
    for (std::size_t k = 0; k < L.A.size(); ++k) {
        Valuation v = exact::ord_q(L.A[k], L.a);
        if (v.infinite) continue;
        pts.emplace_back(BigRat(static_cast<long>(k)), v.value);
    }
    return RatPolygon::lower_hull(std::move(pts));
}

OrdinarityWitness ordinarity_witness(const FamilyCoeffs& fc, WitnessMode mode,
                                     SalieCache& cache) {
    fc.validate();
    auto base = ff::FieldTower::build(fc.p, fc.a, 1);
    if (!hasse::nondegenerate(fc.n, *base, fc.values).nondegenerate)
        throw usage_error("ordinarity_witness: degenerate coefficient tuple");

    OrdinarityWitness w;
    w.mode = mode;
    auto profile = polytope::hodge_profile(polytope::family_delta(fc.n, polytope::Variant::full),
                                           fc.n + 2);
    w.hodge = polytope::hodge_polygon(profile);

    if (mode == WitnessMode::breakpoints) {
        const std::size_t top = static_cast<std::size_t>(fc.n) + 2;
        PowerSums ps = power_sums_family(fc, static_cast<std::uint32_t>(top), cache);
        LPoly L = l_poly_from_power_sums(ps, top);
        Valuation v1 = exact::ord_q(L.A[1], L.a);
        Valuation vtop = exact::ord_q(L.A[top], L.a);
        w.measured.emplace_back(1, v1);
        w.measured.emplace_back(top, vtop);
        // NP >= HP with equal endpoints: contact at x = 1 and the second
        // Hodge break x = n+2 pins NP = HP (slope symmetry + convexity)
        w.ordinary = !v1.infinite && v1.value == 0 && !vtop.infinite &&
                     vtop.value == BigRat(fc.n + 1);
        return w;
    }

    const std::size_t d = std::size_t(1) << (fc.n + 1);
    PowerSums ps = power_sums_family(fc, static_cast<std::uint32_t>(d), cache);
    LPoly L = l_poly_from_power_sums(ps, d);
    if (L.A[d].is_zero())
        throw internal_error("ordinarity_witness: degree drop in full reconstruction");
    for (std::size_t k = 0; k <= d; ++k)
        w.measured.emplace_back(k, exact::ord_q(L.A[k], L.a));
    w.np = q_adic_newton_polygon(L);
    w.ordinary = w.np == w.hodge;
    return w;
}

PurityReport purity_check(const LPoly& L, double tolerance) {
    using C = std::complex<long double>;
    PurityReport rep;
    const std::size_t d = L.A.size() - 1;
    std::uint64_t qv = 1;
    for (std::uint32_t i = 0; i < L.a; ++i) qv *= L.p;
    rep.target = std::pow(static_cast<double>(qv), (L.n + 1) / 2.0);
    if (d == 0) { // constant polynomial: nothing to check
        rep.converged = true;
        rep.pass = true;
        return rep;
    }
    if (L.A[d].is_zero()) throw usage_error("purity_check: leading coefficient vanishes");

    const long double pi = 3.14159265358979323846264338327950288L;
    std::vector<C> coeff(d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
        C v = 0;
        const auto& coords = L.A[j].coords();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            long double ci = coords[i].convert_to<long double>();
            long double ang = 2.0L * pi * static_cast<long double>(i) / L.p;
            v += ci * C(std::cos(ang), std::sin(ang));
        }
        coeff[j] = v;
    }

    // Durand-Kerner on the monic normalization
    std::vector<C> monic(d + 1);
    for (std::size_t j = 0; j <= d; ++j) monic[j] = coeff[j] / coeff[d];
    std::vector<C> roots(d);
    C seed(0.4L, 0.9L);
    C cur(1.0L, 0.0L);
    for (std::size_t i = 0; i < d; ++i) {
        cur *= seed;
        roots[i] = cur;
    }
    auto eval = [&](C x) {
        C acc = monic[d];
        for (std::size_t j = d; j-- > 0;) acc = acc * x + monic[j];
        return acc;
    };
    bool converged = false;
    for (int iter = 0; iter < 1000 && !converged; ++iter) {
        long double delta = 0;
        for (std::size_t i = 0; i < d; ++i) {
            C denom(1.0L, 0.0L);
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            C corr = eval(roots[i]) / denom;
            roots[i] -= corr;
            delta = std::max(delta, std::abs(corr));
        }
        converged = delta < 1e-16L;
    }
    rep.converged = converged;
    if (!converged) return rep;

    rep.pass = true;
    for (const auto& r : roots) {
        double alpha_mod = static_cast<double>(1.0L / std::abs(r));
        rep.moduli.push_back(alpha_mod);
        rep.max_abs_err = std::max(rep.max_abs_err, std::abs(alpha_mod - rep.target));
    }
    if (rep.max_abs_err > tolerance) rep.pass = false;
    return rep;
}

} // namespace lfnp::expsum
