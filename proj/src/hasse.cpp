#include "lfnp/hasse.hpp"

#include <map>
#include <mutex>

#include "lfnp/errors.hpp"

namespace lfnp::hasse {

using dwork::SplittingCoeffs;
using exact::FpPoly;

NondegReport nondegenerate(int n, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(n + 1))
        throw usage_error("nondegenerate: expected n+1 coefficients");
    NondegReport rep;
    rep.nondegenerate = true;
    for (std::uint32_t c : coeffs) {
        if (c >= base.size()) throw usage_error("nondegenerate: coefficient out of range");
        if (c == 0) rep.nondegenerate = false;
    }
    const std::uint32_t an1 = coeffs[static_cast<std::size_t>(n)];
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::uint32_t acc = an1;
        for (int i = 0; i < n; ++i) {
            std::uint32_t twice = base.add(coeffs[static_cast<std::size_t>(i)],
                                           coeffs[static_cast<std::size_t>(i)]);
            acc = ((mask >> i) & 1) ? base.sub(acc, twice) : base.add(acc, twice);
        }
        rep.products.push_back(acc);
        if (acc == 0) rep.nondegenerate = false;
    }
    return rep;
}

namespace {

const SplittingCoeffs& lambdas(std::uint32_t p) {
    static std::mutex mu;
    static std::map<std::uint32_t, SplittingCoeffs> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end())
        it = cache.emplace(p, dwork::splitting_coeffs(p, 2 * static_cast<std::size_t>(p) + 2))
                 .first;
    return it->second;
}

std::uint32_t lam(const SplittingCoeffs& sc, long m) {
    return m < 0 ? 0 : sc.residues.at(static_cast<std::size_t>(m));
}

} // namespace

FpPoly hasse_n2_symbolic(std::uint32_t p) {
    const auto& sc = lambdas(p);
    FpPoly H(p, 3);
    const long half = (static_cast<long>(p) - 1) / 2;
    for (long u = 0; u <= half; ++u)
        for (long v = 0; u + v <= half; ++v) {
            long rest = static_cast<long>(p) - 1 - 2 * u - 2 * v;
            std::uint64_t c = lam(sc, v);
            c = c * lam(sc, v) % p;
            c = c * lam(sc, u) % p * lam(sc, u) % p;
            c = c * lam(sc, rest) % p;
            if (!c) continue;
            H.add_term({static_cast<std::uint16_t>(2 * v), static_cast<std::uint16_t>(2 * u),
                        static_cast<std::uint16_t>(rest)},
                       c);
        }
    return H;
}

FpPoly hasse_n2_intro_symbolic(std::uint32_t p) {
    const auto& sc = lambdas(p);
    FpPoly H(p, 3);
    const long half = (static_cast<long>(p) - 1) / 2;
    for (long u = 0; u <= half; ++u)
        for (long v = 0; u + v <= half; ++v) {
            long rest = static_cast<long>(p) - 1 - 2 * u - 2 * v;
            std::uint64_t c = lam(sc, v);
            c = c * lam(sc, v) % p;
            c = c * lam(sc, u) % p * lam(sc, u) % p;
            c = c * lam(sc, rest) % p * lam(sc, rest) % p; // squared in the intro display
            if (!c) continue;
            H.add_term({static_cast<std::uint16_t>(2 * v), static_cast<std::uint16_t>(2 * u),
                        static_cast<std::uint16_t>(rest)},
                       c);
        }
    return H;
}

std::uint32_t hasse_n2(const ff::FieldTower& base, std::uint32_t a, std::uint32_t b,
                       std::uint32_t c) {
    static std::mutex mu;
    static std::map<std::uint32_t, FpPoly> cache;
    const FpPoly* poly = nullptr;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(base.p());
        if (it == cache.end()) it = cache.emplace(base.p(), hasse_n2_symbolic(base.p())).first;
        poly = &it->second;
    }
    return dwork::eval_fq(*poly, base, {a, b, c});
}

// h_p(Delta',1): the weight-1 break condition, not the list function h_1.
FpPoly hasse_n3_h1_symbolic(std::uint32_t p) {
    if (p < 5) throw usage_error("hasse_n3_h1_symbolic: p >= 5 required");
    const auto& sc = lambdas(p);
    FpPoly H(p, 4);
    const long half = (static_cast<long>(p) - 1) / 2;
    for (long u = 0; u <= half; ++u)
        for (long v = 0; u + v <= half; ++v)
            for (long w = 0; u + v + w <= half; ++w) {
                long rest = static_cast<long>(p) - 1 - 2 * (u + v + w);
                std::uint64_t c = lam(sc, u);
                c = c * lam(sc, u) % p;
                c = c * lam(sc, v) % p * lam(sc, v) % p;
                c = c * lam(sc, w) % p * lam(sc, w) % p;
                c = c * lam(sc, rest) % p;
                if (!c) continue;
                H.add_term({static_cast<std::uint16_t>(2 * u), static_cast<std::uint16_t>(2 * v),
                            static_cast<std::uint16_t>(2 * w), static_cast<std::uint16_t>(rest)},
                           c);
            }
    return H;
}

FpPoly hasse_n3_h_symbolic(std::uint32_t p, int i, HVariant variant) {
    if (p < 5)
        throw usage_error("hasse_n3_h_symbolic: p >= 5 required (negative exponent ranges)");
    if (i < 0 || i > 6) throw usage_error("hasse_n3_h_symbolic: i in 0..6");
    if (i == 6)
        return hasse_n3_h_symbolic(p, 1, variant) - hasse_n3_h_symbolic(p, 4, variant);

    const auto& sc = lambdas(p);
    const long P = static_cast<long>(p);
    // Displayed shapes:  sum over u+v+w <= floor(bound2/2) of
    //   lambda_u lambda_{u+ulam_shift} (lambda_v^2 | lambda_v lambda_{p+v})
    //   lambda_w^2 lambda_{tail_lam - 2(u+v+w)}
    //   a1^{a1_shift+2u} a2^{2v | p+2v} a3^{2w} a4^{tail_expo - 2(u+v+w)}.
    struct Shape {
        long bound2, ulam_shift, a1_shift;
        bool a2_pair;
        long tail_lam, tail_expo;
    };
    Shape sh{};
    switch (i) {
        case 0: sh = {2 * (P - 1), 0, 0, false, 2 * P - 2, 2 * P - 2}; break;
        case 1: sh = {P - 1, P - 1, P - 1, false, P - 1, P - 1}; break;
        case 2: sh = {P - 3, 1, 1, true, P - 3, P - 3}; break;
        case 3: sh = {P - 3, P + 1, P + 1, false, P - 3, P - 3}; break;
        case 4:
            // printed pairs lambda_{p-1-2(u+v+w)} with a4^{p-2-2(u+v+w)};
            // resolved aligns the lambda index with the exponent
            sh = {P - 2, P, P, false, variant == HVariant::printed ? P - 1 : P - 2, P - 2};
            break;
        case 5:
            sh = {2 * P - 3, 1, 1, false, variant == HVariant::printed ? P - 1 : 2 * P - 3,
                  2 * P - 3};
            break;
        default: break;
    }
    FpPoly H(p, 4);
    const long half = sh.bound2 / 2; // floored when bound2 is odd (flagged ambiguity)
    for (long u = 0; u <= half; ++u)
        for (long v = 0; u + v <= half; ++v)
            for (long w = 0; u + v + w <= half; ++w) {
                const long drop = 2 * (u + v + w);
                const long tail_e = sh.tail_expo - drop;
                const long tail_l = sh.tail_lam - drop;
                if (tail_e < 0) continue;
                std::uint64_t c = lam(sc, u);
                c = c * lam(sc, i == 0 ? u : u + sh.ulam_shift) % p;
                if (sh.a2_pair)
                    c = c * lam(sc, v) % p * lam(sc, P + v) % p;
                else
                    c = c * lam(sc, v) % p * lam(sc, v) % p;
                c = c * lam(sc, w) % p * lam(sc, w) % p;
                c = c * lam(sc, tail_l) % p;
                if (!c) continue;
                FpPoly::Expo e(4, 0);
                e[0] = static_cast<std::uint16_t>(sh.a1_shift + 2 * u);
                e[1] = static_cast<std::uint16_t>(sh.a2_pair ? P + 2 * v : 2 * v);
                e[2] = static_cast<std::uint16_t>(2 * w);
                e[3] = static_cast<std::uint16_t>(tail_e);
                H.add_term(e, c);
            }
    return H;
}

namespace {

// h(a_{p1}, a_{p2}, a_{p3}, a_4)
FpPoly harg(const FpPoly& h, std::size_t p1, std::size_t p2, std::size_t p3) {
    return h.permuted({p1 - 1, p2 - 1, p3 - 1, 3});
}

} // namespace

FpPoly hasse_n3_symbolic(std::uint32_t p, HVariant variant) {
    const FpPoly h0 = hasse_n3_h_symbolic(p, 0, variant);
    const FpPoly h2 = hasse_n3_h_symbolic(p, 2, variant);
    const FpPoly h4 = hasse_n3_h_symbolic(p, 4, variant);
    const FpPoly h5 = hasse_n3_h_symbolic(p, 5, variant);
    const FpPoly h6 = hasse_n3_h_symbolic(p, 6, variant);
    const FpPoly zero(p, 4);

    auto two = [&](const FpPoly& f) { return f.scaled(2); };
    auto neg = [&](const FpPoly& f) { return zero - f; };

    std::vector<std::vector<FpPoly>> M = {
        {h0, harg(h4, 1, 2, 3), harg(h4, 2, 1, 3), harg(h4, 3, 1, 2)},
        {two(harg(h5, 1, 2, 3)), neg(harg(h6, 1, 2, 3)), two(harg(h2, 1, 2, 3)),
         two(harg(h2, 2, 3, 1))},
        {two(harg(h5, 2, 1, 3)), two(harg(h2, 2, 1, 3)), neg(harg(h6, 2, 1, 3)),
         two(harg(h2, 1, 3, 2))},
        {two(harg(h5, 3, 1, 2)), two(harg(h2, 3, 1, 2)), two(harg(h2, 3, 2, 1)),
         neg(harg(h6, 3, 1, 2))},
    };
    FpPoly T = exact::fppoly_det(M);
    T = T * harg(h6, 1, 2, 3);
    T = T * harg(h6, 2, 1, 3);
    T = T * harg(h6, 3, 1, 2);
    // prefactor is the weight-1 break polynomial h_p(Delta',1)
    return hasse_n3_h1_symbolic(p) * T;
}

std::uint32_t hasse_n3_h1(const ff::FieldTower& base,
                          const std::vector<std::uint32_t>& coeffs) {
    return dwork::eval_fq(hasse_n3_h1_symbolic(base.p()), base, coeffs);
}

std::uint32_t hasse_n3(const ff::FieldTower& base, const std::vector<std::uint32_t>& coeffs,
                       HVariant variant) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, int>, FpPoly> cache;
    const std::pair<std::uint32_t, int> key{base.p(), static_cast<int>(variant)};
    const FpPoly* poly = nullptr;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, hasse_n3_symbolic(base.p(), variant)).first;
        poly = &it->second;
    }
    return dwork::eval_fq(*poly, base, coeffs);
}

} // namespace lfnp::hasse
