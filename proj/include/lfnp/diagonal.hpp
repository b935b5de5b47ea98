// Diagonal local theory: solution groups via Smith normal form, q-power
// orbits, Stickelberger valuations, and exact Newton polygons of diagonal
// Laurent polynomials.  Gauss sums never materialize; only their
// valuations and the orbit bookkeeping enter the polygon.
#pragma once

#include <cstdint>
#include <vector>

#include "lfnp/bigint.hpp"
#include "lfnp/ratpolygon.hpp"
#include "lfnp/smith.hpp"

namespace lfnp::diagonal {

struct SolutionGroup {
    exact::IntMat M;
    exact::BigInt det_abs = 0;
    std::vector<exact::BigInt> invariant_factors; // d_1 | d_2 | ... (nontrivial ones included)
    long denominator = 1;                         // d_n = exponent of the group
    // elements of S(Delta): numerators over `denominator`, each in [0, denominator)
    std::vector<std::vector<long>> elements;
};

/// Solutions of M r = 0 (mod 1), r in [0,1)^n, for nonsingular integer M.
SolutionGroup solution_group(const exact::IntMat& M);

/// Order of one element (smallest t with t*r integral).
long element_order(const SolutionGroup& g, const std::vector<long>& nums);

/// sigma_p(k) / (p-1) for 0 <= k <= q-2, q = p^a.
exact::BigRat stickelberger_ord(const exact::BigInt& k, std::uint32_t p, std::uint32_t a);

struct Orbit {
    std::vector<std::size_t> members; // indices into group elements (the S_p part)
    std::size_t d = 1;                // orbit length under r -> {q r}
    exact::BigRat slope;              // common ord_q of the d reciprocal zeros
};

struct DiagonalNP {
    SolutionGroup group;
    std::vector<Orbit> orbits;
    std::vector<exact::BigRat> slopes; // ascending, one per reciprocal zero
    exact::RatPolygon np;
    bool sp_equals_s = true; // p coprime to det(M)
};

/// Slope multiset of the L-function of a nondegenerate diagonal Laurent
/// polynomial with vertex matrix M over F_q, q = p^a.  Coefficients enter
/// only through nonvanishing, so they are not parameters here.
DiagonalNP diagonal_np(const exact::IntMat& M, std::uint32_t p, std::uint32_t a);

struct OrdinaryCriterion {
    exact::BigInt dnp = 1;    // largest invariant factor of S_p(Delta)
    bool ordinary = false;    // p = 1 (mod dnp): sufficient, not necessary
    bool criterion_only = true;
};
OrdinaryCriterion diagonal_ordinary(const exact::IntMat& M, std::uint32_t p);

} // namespace lfnp::diagonal
