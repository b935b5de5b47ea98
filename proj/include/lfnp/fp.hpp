// Arithmetic mod p and sparse multivariate polynomials over F_p.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1;
    base %= p;
    for (; e; e >>= 1) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
    if (x % p == 0) throw usage_error("inv_mod: zero is not invertible");
    return mod_pow(x, p - 2, p);
}

/// Sparse polynomial over F_p in a fixed number of variables.
/// Exponent vectors are the map keys; coefficients are in [1, p-1].
class FpPoly {
public:
    using Expo = std::vector<std::uint16_t>;

    FpPoly() = default;
    FpPoly(std::uint32_t p, std::size_t nvars) : p_(p), nvars_(nvars) {}

    static FpPoly constant(std::uint32_t p, std::size_t nvars, std::uint32_t c) {
        FpPoly f(p, nvars);
        f.add_term(Expo(nvars, 0), c);
        return f;
    }
    static FpPoly monomial(std::uint32_t p, std::size_t nvars, const Expo& e, std::uint32_t c) {
        FpPoly f(p, nvars);
        f.add_term(e, c);
        return f;
    }

    std::uint32_t p() const { return p_; }
    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Expo, std::uint32_t>& terms() const { return terms_; }

    void add_term(const Expo& e, std::uint64_t c) {
        if (e.size() != nvars_) throw usage_error("FpPoly: exponent arity mismatch");
        std::uint32_t cc = static_cast<std::uint32_t>(c % p_);
        if (cc == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, cc);
        } else {
            it->second = (it->second + cc) % p_;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FpPoly operator+(const FpPoly& o) const {
        check(o);
        FpPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    FpPoly operator-(const FpPoly& o) const {
        check(o);
        FpPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, p_ - c);
        return r;
    }
    FpPoly operator*(const FpPoly& o) const {
        check(o);
        FpPoly r(p_, nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Expo e(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i)
                    e[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
                r.add_term(e, std::uint64_t(c1) * c2);
            }
        return r;
    }
    FpPoly scaled(std::uint32_t c) const {
        FpPoly r(p_, nvars_);
        for (const auto& [e, cc] : terms_) r.add_term(e, std::uint64_t(cc) * (c % p_));
        return r;
    }
    bool operator==(const FpPoly& o) const {
        return p_ == o.p_ && nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    /// Substitute variables: result variable i gets old variable perm[i]'s role,
    /// i.e. new exponent vector e'[perm[i]] = e[i].
    FpPoly permuted(const std::vector<std::size_t>& perm) const {
        if (perm.size() != nvars_) throw usage_error("FpPoly::permuted: arity mismatch");
        FpPoly r(p_, nvars_);
        for (const auto& [e, c] : terms_) {
            Expo ne(nvars_, 0);
            for (std::size_t i = 0; i < nvars_; ++i) ne[perm[i]] = e[i];
            r.add_term(ne, c);
        }
        return r;
    }

    /// Evaluate at a point in F_p^nvars.
    std::uint32_t eval_fp(const std::vector<std::uint32_t>& x) const {
        if (x.size() != nvars_) throw usage_error("FpPoly::eval_fp: arity mismatch");
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i]) t = t * mod_pow(x[i], e[i], p_) % p_;
            acc = (acc + t) % p_;
        }
        return static_cast<std::uint32_t>(acc);
    }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    std::uint32_t p_ = 0;
    std::size_t nvars_ = 0;
    std::map<Expo, std::uint32_t> terms_;

    void check(const FpPoly& o) const {
        if (p_ != o.p_ || nvars_ != o.nvars_)
            throw usage_error("FpPoly: mixed p or arity");
    }
};

/// Determinant of a square FpPoly matrix by memoized Laplace expansion.
/// Intended for the small (<= 8x8) symbolic blocks.
FpPoly fppoly_det(const std::vector<std::vector<FpPoly>>& M);

} // namespace lfnp::exact
