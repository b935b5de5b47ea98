#include "lfnp/field.hpp"

#include <algorithm>
#include <string>

namespace lfnp::ff {

namespace {

using Poly = std::vector<std::uint32_t>; // dense, ascending, over F_p

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mulmod(const Poly& f, const Poly& g, const Poly& mod, std::uint32_t p) {
    if (f.empty() || g.empty()) return {};
    std::vector<std::uint64_t> acc(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            acc[i + j] += std::uint64_t(f[i]) * g[j];
    }
    const std::size_t m = mod.size() - 1;
    // reduce: X^m = -(mod_0 + ... + mod_{m-1} X^{m-1})  (mod monic)
    for (std::size_t d = acc.size(); d-- > m;) {
        std::uint64_t c = acc[d] % p;
        if (!c) continue;
        acc[d] = 0;
        for (std::size_t i = 0; i < m; ++i)
            acc[d - m + i] += c * (p - mod[i] % p);
    }
    Poly r(m, 0);
    for (std::size_t i = 0; i < m && i < acc.size(); ++i)
        r[i] = static_cast<std::uint32_t>(acc[i] % p);
    return poly_trim(r);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
    Poly r = {1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

std::uint32_t fp_inv(std::uint32_t x, std::uint32_t p) {
    std::uint64_t base = x % p, acc = 1;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(acc);
}

Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    a = poly_trim(a);
    const std::uint32_t lead_inv = fp_inv(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        if (c)
            for (std::size_t i = 0; i + 1 < b.size(); ++i)
                a[shift + i] =
                    static_cast<std::uint32_t>((a[shift + i] + c * (p - b[i] % p)) % p);
        a.pop_back();
        a = poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

bool poly_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (f[0] == 0) return m == 1; // divisible by X unless f = X itself
    // x^{p^m} == x mod f, and gcd(x^{p^{m/l}} - x, f) = 1 for prime l | m
    Poly x = (m == 1) ? Poly{(p - f[0] % p) % p} : Poly{0, 1}; // X mod f
    if (m == 1) return true;
    Poly fr = x;
    std::vector<Poly> frob_iter(m + 1);
    frob_iter[0] = x;
    for (std::size_t i = 1; i <= m; ++i)
        frob_iter[i] = poly_powmod(frob_iter[i - 1], p, f, p);
    if (poly_trim(frob_iter[m]) != poly_trim(x)) return false;
    for (std::size_t l = 2; l <= m; ++l) {
        if (m % l) continue;
        bool lprime = true;
        for (std::size_t d = 2; d * d <= l; ++d)
            if (l % d == 0) { lprime = false; break; }
        if (!lprime) continue;
        Poly diff = frob_iter[m / l];
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        Poly g = poly_gcd(f, poly_trim(diff), p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace

std::vector<std::uint32_t> nth_irreducible(std::uint32_t p, std::uint32_t m, std::uint32_t index) {
    std::uint64_t count = 0;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) total *= p;
    for (std::uint64_t packed = 0; packed < total; ++packed) {
        Poly f(m + 1);
        std::uint64_t t = packed;
        for (std::uint32_t i = 0; i < m; ++i) { f[i] = t % p; t /= p; }
        f[m] = 1;
        if (poly_irreducible(f, p)) {
            if (count == index) return f;
            ++count;
        }
    }
    throw internal_error("nth_irreducible: exhausted enumeration (bug)");
}

std::shared_ptr<const FieldTower> FieldTower::build(std::uint32_t p, std::uint32_t a,
                                                    std::uint32_t k, std::uint64_t table_cap,
                                                    std::uint32_t modulus_index) {
    if (p < 3) throw usage_error("FieldTower: p must be an odd prime");
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw usage_error("FieldTower: p is not prime");
    if (a * k == 0) throw usage_error("FieldTower: a*k must be >= 1");

    const std::uint32_t m = a * k;
    std::uint64_t q64 = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q64 *= p;
        if (q64 > table_cap)
            throw resource_error("FieldTower: p^(a*k) = exceeds the table cap (" +
                                 std::to_string(table_cap) + ")");
    }
    const std::uint32_t q = static_cast<std::uint32_t>(q64);

    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->p_ = p; t->a_ = a; t->k_ = k; t->m_ = m; t->q_ = q;
    t->modulus_index_ = modulus_index;
    t->powp_.resize(m + 1);
    t->powp_[0] = 1;
    for (std::uint32_t i = 1; i <= m; ++i) t->powp_[i] = t->powp_[i - 1] * p;
    {
        std::uint64_t qb = 1;
        for (std::uint32_t i = 0; i < a; ++i) qb *= p;
        t->qbase_ = static_cast<std::uint32_t>(qb);
    }
    t->modulus_ = nth_irreducible(p, m, modulus_index);

    // generator: smallest unit index whose order is q-1
    std::vector<std::uint64_t> prime_factors;
    {
        std::uint64_t n = q - 1;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) prime_factors.push_back(n);
    }
    auto idx_to_poly = [&](std::uint32_t idx) {
        Poly f;
        while (idx) { f.push_back(idx % p); idx /= p; }
        return f;
    };
    auto poly_to_idx = [&](const Poly& f) {
        std::uint32_t idx = 0;
        for (std::size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
        return idx;
    };
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 2; cand < q; ++cand) {
        Poly g = idx_to_poly(cand);
        bool ok = true;
        for (std::uint64_t f : prime_factors) {
            Poly e = poly_powmod(g, (q - 1) / f, t->modulus_, p);
            if (poly_to_idx(e) == 1) { ok = false; break; }
        }
        if (ok) { gen = cand; break; }
    }
    if (gen == 0) throw internal_error("FieldTower: no generator found (bug)");
    t->gen_ = gen;

    t->expt_.assign(q - 1, 0);
    t->logt_.assign(q, 0);
    {
        Poly cur = {1};
        Poly g = idx_to_poly(gen);
        for (std::uint32_t l = 0; l < q - 1; ++l) {
            std::uint32_t idx = poly_to_idx(cur);
            t->expt_[l] = idx;
            t->logt_[idx] = l;
            cur = poly_mulmod(cur, g, t->modulus_, p);
        }
        if (poly_to_idx(cur) != 1)
            throw internal_error("FieldTower: generator order mismatch (bug)");
    }

    // absolute trace: Tr(x) = sum_{i<m} x^{p^i}
    t->trt_.assign(q, 0);
    for (std::uint32_t x = 1; x < q; ++x) {
        std::uint32_t acc = x;
        std::uint32_t y = x;
        for (std::uint32_t i = 1; i < m; ++i) {
            std::uint64_t l = std::uint64_t(t->logt_[y]) * p % (q - 1);
            y = t->expt_[l];
            acc = t->add(acc, y);
        }
        if (acc >= p)
            throw internal_error("FieldTower: trace landed outside F_p (bug)");
        t->trt_[x] = static_cast<std::uint8_t>(acc);
    }

    // embedding of the base field F_{p^a}
    t->base_embed_.assign(t->qbase_, 0);
    if (a == 1) {
        // F_p sits inside the tower as the constant polynomials.
        for (std::uint32_t c = 0; c < p; ++c) t->base_embed_[c] = c;
    } else {
        t->base_modulus_ = nth_irreducible(p, a, 0);
        // smallest root of the base modulus inside the tower
        std::uint32_t root = 0;
        bool found = false;
        for (std::uint32_t x = 0; x < q && !found; ++x) {
            // Horner
            std::uint32_t acc = t->base_modulus_[a];
            for (std::uint32_t i = a; i-- > 0;)
                acc = t->add(t->mul(acc, x), t->base_modulus_[i] % p);
            if (acc == 0) { root = x; found = true; }
        }
        if (!found) throw internal_error("FieldTower: base modulus has no root (bug)");
        for (std::uint32_t c = 0; c < t->qbase_; ++c) {
            std::uint32_t digits = c, acc = 0, rp = 1; // rp = root^i
            for (std::uint32_t i = 0; i < a; ++i) {
                std::uint32_t d = digits % p;
                digits /= p;
                if (d) acc = t->add(acc, t->mul(d, rp));
                rp = t->mul(rp, root);
            }
            t->base_embed_[c] = acc;
        }
    }
    return t;
}

std::uint32_t FieldTower::add(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < m_ && (x || y); ++i) {
        std::uint32_t d = (x % p_ + y % p_) % p_;
        x /= p_; y /= p_;
        r += d * powp_[i];
    }
    return r;
}

std::uint32_t FieldTower::neg(std::uint32_t x) const {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < m_ && x; ++i) {
        std::uint32_t d = x % p_;
        x /= p_;
        if (d) r += (p_ - d) * powp_[i];
    }
    return r;
}

std::uint32_t FieldTower::sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }

std::uint32_t FieldTower::pow(std::uint32_t x, long long e) const {
    if (x == 0) {
        if (e <= 0) throw usage_error("FieldTower::pow: 0 to nonpositive power");
        return 0;
    }
    long long ord = q_ - 1;
    long long l = (static_cast<long long>(logt_[x]) * (e % ord)) % ord;
    if (l < 0) l += ord;
    return expt_[static_cast<std::size_t>(l)];
}

std::uint32_t FieldTower::embed_base(std::uint32_t c) const {
    if (c >= qbase_) throw usage_error("FieldTower::embed_base: index out of range");
    return base_embed_[c];
}

std::uint32_t fq_det(const FieldTower& t, std::vector<std::vector<std::uint32_t>> M) {
    const std::size_t n = M.size();
    for (const auto& r : M)
        if (r.size() != n) throw usage_error("fq_det: not square");
    std::uint32_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && M[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(M[piv], M[k]);
            det = t.neg(det);
        }
        det = t.mul(det, M[k][k]);
        const std::uint32_t inv = t.inv(M[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0) continue;
            const std::uint32_t f = t.mul(M[i][k], inv);
            for (std::size_t j = k; j < n; ++j)
                M[i][j] = t.sub(M[i][j], t.mul(f, M[k][j]));
        }
    }
    return det;
}

exact::CycInt CharTable::char_sum(const std::vector<std::uint32_t>& values) const {
    const std::uint32_t p = tower->p();
    std::vector<std::int64_t> counts(p, 0);
    for (std::uint32_t v : values) counts[tower->trace(v)]++;
    return exact::cyc_from_residue_vector(counts, p);
}

} // namespace lfnp::ff
