// Non-degeneracy test and the explicit Hasse polynomial evaluators for
// n = 2 and n = 3.
//
// The n = 3 evaluators exist in two variants.  "printed" is the literal
// transcription of the published h_0..h_6 displays, with the two
// non-integer summation bounds floored and lambda indices taken verbatim.
// "resolved" fixes the two lambda-index/exponent mismatches in h_4 and h_5
// so that each h_i equals the corresponding unit-level Frobenius entry;
// the dwork module is the oracle that adjudicates between them.
#pragma once

#include <cstdint>
#include <vector>

#include "lfnp/dwork.hpp"
#include "lfnp/field.hpp"
#include "lfnp/fp.hpp"

namespace lfnp::hasse {

struct NondegReport {
    std::vector<std::uint32_t> products; // the 2^n values 2c.a + a_{n+1} in F_q
    bool nondegenerate = false;          // all a_i != 0 and all products != 0
};

/// coeffs are indices in the base field F_q (the tower must be F_q itself).
NondegReport nondegenerate(int n, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs);

/// H(a,b,c) = sum_{u+v <= (p-1)/2} l_u^2 l_v^2 l_{p-1-2u-2v} a^{2v} b^{2u} c^{p-1-2u-2v}.
exact::FpPoly hasse_n2_symbolic(std::uint32_t p);
/// The introduction's display squares the last factorial as well; kept for
/// the record, adjudicated against the chain determinant empirically.
exact::FpPoly hasse_n2_intro_symbolic(std::uint32_t p);
std::uint32_t hasse_n2(const ff::FieldTower& base, std::uint32_t a, std::uint32_t b,
                       std::uint32_t c);

enum class HVariant { printed, resolved };

exact::FpPoly hasse_n3_h1_symbolic(std::uint32_t p);
/// h_i, i = 0..6, in the displayed argument order (a_1, a_2, a_3, a_4).
exact::FpPoly hasse_n3_h_symbolic(std::uint32_t p, int i, HVariant variant);
/// h1 * det(4x4) * h6(a1,a2,a3,a4) h6(a2,a1,a3,a4) h6(a3,a1,a2,a4).
exact::FpPoly hasse_n3_symbolic(std::uint32_t p, HVariant variant);

std::uint32_t hasse_n3_h1(const ff::FieldTower& base, const std::vector<std::uint32_t>& coeffs);
std::uint32_t hasse_n3(const ff::FieldTower& base, const std::vector<std::uint32_t>& coeffs,
                       HVariant variant = HVariant::printed);

} // namespace lfnp::hasse
