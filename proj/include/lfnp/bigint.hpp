// Exact integer/rational substrate plus the handful of p-adic helpers the
// rest of the library needs.  Backed by boost::multiprecision (header-only).
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& x) { return boost::multiprecision::numerator(x); }
inline BigInt rat_den(const BigRat& x) { return boost::multiprecision::denominator(x); }

/// p-adic valuation of a nonzero integer.
inline long padic_val(BigInt x, const BigInt& p) {
    if (x == 0) throw usage_error("padic_val: zero has infinite valuation");
    long v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

/// p-adic valuation of a nonzero rational.
inline long padic_val(const BigRat& x, const BigInt& p) {
    if (x == 0) throw usage_error("padic_val: zero has infinite valuation");
    long v = rat_num(x) == 0 ? 0 : padic_val(rat_num(x), p);
    if (rat_den(x) != 1) v -= padic_val(rat_den(x), p);
    return v;
}

/// Image of x in Z_p/pZ_p = F_p.  Requires nu_p(x) >= 0.
inline std::uint32_t rat_mod_p(const BigRat& x, std::uint32_t p) {
    const BigInt bp = p;
    if (x == 0) return 0;
    BigInt num = rat_num(x), den = rat_den(x);
    while (num % bp == 0 && den % bp == 0) { num /= bp; den /= bp; }
    if (den % bp == 0)
        throw usage_error("rat_mod_p: negative p-adic valuation at p=" + std::to_string(p) +
                          " for " + x.str());
    BigInt n = num % bp; if (n < 0) n += bp;
    BigInt d = den % bp;
    // d^(p-2) = d^{-1} in F_p
    std::uint64_t dinv = 1, base = d.convert_to<std::uint64_t>();
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) dinv = dinv * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(n.convert_to<std::uint64_t>() * dinv % p);
}

/// Valuation value: a nonnegative rational or +infinity (zero element only).
struct Valuation {
    bool infinite = false;
    BigRat value = 0;

    static Valuation inf() { return {true, 0}; }
    static Valuation of(BigRat v) { return {false, std::move(v)}; }
    bool operator==(const Valuation& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    std::string str() const { return infinite ? "inf" : value.str(); }
};

} // namespace lfnp::exact

namespace lfnp {
using exact::BigInt;
using exact::BigRat;
using exact::Valuation;
} // namespace lfnp
