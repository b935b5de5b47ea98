// Newton polyhedra of the family, weight functions, lattice-point counts,
// Hodge numbers and the Hodge / chain polygons.
//
// The family in n+1 variables has Delta(f) with vertices
//   V_0 = e_{n+1}, V_{2i-1} = e_i + e_{n+1}, V_{2i} = -e_i + e_{n+1} (i <= n),
//   V_{2n+1} = -e_{n+1},
// faces x_{n+1} = 1 and 2c_1x_1 + ... + 2c_nx_n - x_{n+1} = 1, c in {+-1}^n.
// Delta'(g) drops V_{2n+1}, keeping the single face x_{n+1} = 1.
#pragma once

#include <cstdint>
#include <vector>

#include "lfnp/bigint.hpp"
#include "lfnp/ratpolygon.hpp"

namespace lfnp::polytope {

using exact::BigInt;
using exact::BigRat;
using exact::RatPolygon;
using exact::Valuation;

enum class Variant { full, bottom };

struct NewtonData {
    int n = 0;        // family parameter
    int dim = 0;      // n+1 ambient coordinates
    Variant variant = Variant::full;
    long D = 1;       // denominator of the polyhedron (1 for this family)
    std::vector<std::vector<long>> vertices;       // cone generators (origin omitted)
    std::vector<std::vector<BigRat>> faces;        // e with <e,x> = 1, faces avoiding 0
};

NewtonData family_delta(int n, Variant variant);

/// Weight via the face linear forms (with the cone membership test).
Valuation weight(const NewtonData& nd, const std::vector<long>& u);
/// Weight via the exact rational LP over the vertex generators (oracle route).
Valuation weight_lp(const NewtonData& nd, const std::vector<long>& u);

/// W(k) = #{u integral : weight(u) = k/D} for k = 0..kmax, by box enumeration.
std::vector<long> lattice_counts(const NewtonData& nd, int kmax);

/// Closed forms: bottom = sum_i 2^{n-i} C(n,i) C(k, n-i);
/// full(k) = bottom(k) + bottom(k-1).
long lattice_count_closed_form(int n, Variant variant, int k);
/// Alternative bottom-count formula (cross-check only).
long lattice_count_closed_form_alt(int n, int k);

struct HodgeProfile {
    int n = 0, dim = 0;
    long D = 1;
    std::vector<long> W;
    std::vector<long> H;
    long total = 0;                 // sum H = dim! * Vol
    long vol_times_factorial = 0;   // 2^{n+1} (full) or 2^n (bottom)
};

HodgeProfile hodge_profile(const NewtonData& nd, int kmax);

RatPolygon hodge_polygon(const HodgeProfile& profile);
RatPolygon chain_polygon(const std::vector<long>& W, long D = 1);

} // namespace lfnp::polytope
