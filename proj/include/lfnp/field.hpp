// F_{q^k} for q = p^a, built as F_p[X]/(modulus) with deg(modulus) = a*k.
//
// Elements are addressed by their packed index sum coeff_i * p^i.  The tower
// keeps log/exp tables over the unit group and the absolute trace table
// (Tr to F_p); all tables are immutable after build and safe to share
// across threads.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lfnp/cyclotomic.hpp"
#include "lfnp/errors.hpp"

namespace lfnp::ff {

class FieldTower {
public:
    /// Deterministic build: the modulus is the modulus_index-th monic
    /// irreducible of degree a*k in coefficient-vector order (c_0 least
    /// significant).  Throws resource_error when p^{a*k} exceeds table_cap.
    static std::shared_ptr<const FieldTower> build(std::uint32_t p, std::uint32_t a,
                                                   std::uint32_t k,
                                                   std::uint64_t table_cap = 1u << 20,
                                                   std::uint32_t modulus_index = 0);

    std::uint32_t p() const { return p_; }
    std::uint32_t a() const { return a_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t degree() const { return m_; }         // a*k
    std::uint32_t size() const { return q_; }           // p^{a*k}
    std::uint32_t base_size() const { return qbase_; }  // p^a
    std::uint32_t modulus_index() const { return modulus_index_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t sub(std::uint32_t x, std::uint32_t y) const;
    std::uint32_t neg(std::uint32_t x) const;
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        if (x == 0 || y == 0) return 0;
        std::uint32_t l = logt_[x] + logt_[y];
        if (l >= q_ - 1) l -= q_ - 1;
        return expt_[l];
    }
    std::uint32_t inv(std::uint32_t x) const {
        if (x == 0) throw usage_error("FieldTower::inv(0)");
        std::uint32_t l = logt_[x];
        return expt_[l == 0 ? 0 : q_ - 1 - l];
    }
    std::uint32_t pow(std::uint32_t x, long long e) const;
    std::uint32_t frobenius(std::uint32_t x) const { return pow(x, p_); }

    std::uint32_t log(std::uint32_t x) const {
        if (x == 0) throw usage_error("FieldTower::log(0)");
        return logt_[x];
    }
    std::uint32_t exp(std::uint32_t l) const { return expt_[l % (q_ - 1)]; }
    std::uint32_t generator() const { return gen_; }

    /// Absolute trace to F_p, as a residue 0..p-1.
    std::uint32_t trace(std::uint32_t x) const { return trt_[x]; }
    const std::vector<std::uint8_t>& trace_table() const { return trt_; }

    /// Embedding of the base field F_q (q = p^a) by its own packed index.
    std::uint32_t embed_base(std::uint32_t c) const;

    /// Element of the prime field.
    std::uint32_t scalar(std::uint32_t c) const { return c % p_; }

private:
    FieldTower() = default;

    std::uint32_t p_ = 0, a_ = 0, k_ = 0, m_ = 0, q_ = 0, qbase_ = 0;
    std::uint32_t modulus_index_ = 0;
    std::vector<std::uint32_t> modulus_;       // ascending, modulus_[m_] = 1
    std::vector<std::uint32_t> base_modulus_;  // canonical degree-a modulus over F_p
    std::vector<std::uint32_t> logt_, expt_;
    std::vector<std::uint8_t> trt_;
    std::vector<std::uint32_t> base_embed_;    // F_q index -> tower index
    std::vector<std::uint32_t> powp_;          // p^i, i <= m
    std::uint32_t gen_ = 0;
};

/// Additive character table zeta_p^{Tr(.)} over a tower.
struct CharTable {
    std::shared_ptr<const FieldTower> tower;

    explicit CharTable(std::shared_ptr<const FieldTower> t) : tower(std::move(t)) {}

    /// sum of zeta^{Tr(v)} over a multiset of element indices.
    exact::CycInt char_sum(const std::vector<std::uint32_t>& values) const;
};

/// Monic irreducibles of degree m over F_p in deterministic order.
std::vector<std::uint32_t> nth_irreducible(std::uint32_t p, std::uint32_t m, std::uint32_t index);

/// Determinant of a matrix of element indices by Gaussian elimination.
std::uint32_t fq_det(const FieldTower& t, std::vector<std::vector<std::uint32_t>> M);

} // namespace lfnp::ff
