// Exact arithmetic in Z[zeta_p] and the (1-zeta_p)-adic valuation.
//
// Canonical form: an element is stored by its coordinates over the power
// basis 1, zeta, ..., zeta^{p-2}.  Two elements are equal iff their
// coordinate vectors are equal; the relation 1 + zeta + ... + zeta^{p-1} = 0
// eliminates the zeta^{p-1} coordinate.
#pragma once

#include <cstdint>
#include <vector>

#include "lfnp/bigint.hpp"

namespace lfnp::exact {

class CycInt {
public:
    CycInt() = default;
    /// Zero element of Z[zeta_p].
    explicit CycInt(std::uint32_t p) : p_(p), c_(p - 1, BigInt(0)) {}
    CycInt(std::uint32_t p, std::vector<BigInt> canonical_coords);

    static CycInt integer(std::uint32_t p, const BigInt& n);
    /// zeta^k (k arbitrary, reduced mod p).
    static CycInt zeta_pow(std::uint32_t p, long k);

    std::uint32_t p() const { return p_; }
    const std::vector<BigInt>& coords() const { return c_; }
    bool is_zero() const;

    bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator-() const;
    CycInt operator*(const CycInt& o) const;   // cyc_mul
    CycInt& operator+=(const CycInt& o) { *this = *this + o; return *this; }
    CycInt& operator*=(const CycInt& o) { *this = *this * o; return *this; }

    /// Galois action zeta -> zeta^j, gcd(j, p) = 1.
    CycInt galois(std::uint32_t j) const;

    std::string str() const;

private:
    std::uint32_t p_ = 0;
    std::vector<BigInt> c_;   // length p-1, canonical

    void check_compat(const CycInt& o) const;
};

/// Canonicalize a raw length-p coordinate vector sum raw[i] * zeta^i.
CycInt cyc_from_residue_vector(const std::vector<BigInt>& raw, std::uint32_t p);
CycInt cyc_from_residue_vector(const std::vector<std::int64_t>& raw, std::uint32_t p);

/// Largest k with (1-zeta)^k | x; +infinity for x = 0.
Valuation valuation_one_minus_zeta(const CycInt& x);

/// Exact quotient x / (1-zeta); throws internal_error if not divisible.
CycInt divide_one_minus_zeta(const CycInt& x);

/// ord_q(x) = valuation / ((p-1) * a)  for q = p^a.
Valuation ord_q(const CycInt& x, std::uint32_t a);

// ---- Q(zeta_p) helper used by the Newton-identity reconstruction. ----
// Same canonical basis, rational coordinates.  Only the few ring operations
// the reconstruction needs.
class CycRat {
public:
    CycRat() = default;
    explicit CycRat(std::uint32_t p) : p_(p), c_(p - 1, BigRat(0)) {}
    explicit CycRat(const CycInt& x);

    std::uint32_t p() const { return p_; }
    const std::vector<BigRat>& coords() const { return c_; }

    CycRat operator+(const CycRat& o) const;
    CycRat operator-(const CycRat& o) const;
    CycRat operator*(const CycRat& o) const;
    CycRat divided_by(const BigInt& n) const;

    bool is_integral() const;
    /// Conversion to CycInt; throws internal_error when not integral.
    CycInt to_int() const;

private:
    std::uint32_t p_ = 0;
    std::vector<BigRat> c_;
};

} // namespace lfnp::exact
