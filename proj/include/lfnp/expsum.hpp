// Exact exponential sums S_k*(f), the Salie-type tables that factor the
// family's sums, L-polynomial reconstruction through Newton's identities,
// q-adic Newton polygons, ordinariness witnesses and the numeric purity
// check.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfnp/cyclotomic.hpp"
#include "lfnp/field.hpp"
#include "lfnp/polytope.hpp"
#include "lfnp/ratpolygon.hpp"

namespace lfnp::expsum {

// ---- coefficient tuples and generic Laurent polynomials ----

struct FamilyCoeffs {
    int n = 0;
    std::uint32_t p = 0, a = 1;
    std::vector<std::uint32_t> values; // n+1 indices in F_q, all nonzero

    void validate() const;
};

struct LaurentTerm {
    std::uint32_t coeff = 0;   // index in the base field F_q
    std::vector<int> expo;
};
struct LaurentPoly {
    int nvars = 0;
    std::vector<LaurentTerm> terms;
};

/// f = a_1 x_{n+1}(x_1 + 1/x_1) + ... + a_{n+1} x_{n+1} + 1/x_{n+1}
LaurentPoly family_full_poly(const FamilyCoeffs& fc);
/// g = f restricted to the bottom face (drops 1/x_{n+1})
LaurentPoly family_bottom_poly(const FamilyCoeffs& fc);

/// S_k* by direct enumeration over (F_{q^k}^*)^nvars; the reference oracle.
/// The tower must be the degree-k extension; coefficients are F_q indices.
exact::CycInt exp_sum_naive(const ff::FieldTower& tower, const LaurentPoly& f,
                            std::uint64_t loop_cap = 200'000'000ull);

// ---- Salie-type tables ----

/// K(t) = sum_{x in F_{q^k}^*} zeta^{Tr(t(x + 1/x))}, tabulated for every t.
/// raw stores a length-p residue-class vector per element index.
struct SalieTable {
    std::shared_ptr<const ff::FieldTower> tower;
    std::vector<std::int64_t> raw; // size() * p, row-major by element index

    exact::CycInt at(std::uint32_t t) const;
};

/// Strategy picked by size: the quadratic double loop for small fields, an
/// exact additive-character transform over (Z/p)^{ak} for large ones.
SalieTable build_salie_table(std::shared_ptr<const ff::FieldTower> tower,
                             std::uint64_t op_cap = 10'000'000'000ull);
/// Always the quadratic path (small fields; used as an oracle in tests).
SalieTable build_salie_table_naive(std::shared_ptr<const ff::FieldTower> tower,
                                   std::uint64_t op_cap = 10'000'000'000ull);

/// Estimated table-build cost in elementary operations.
std::uint64_t salie_build_cost(std::uint32_t p, std::uint32_t a, std::uint32_t k);

// cache file IO ("SALI" format, little-endian, trailing fnv1a checksum)
void save_salie_table(const SalieTable& table, const std::string& path);
std::optional<SalieTable> load_salie_table(const std::string& path,
                                           std::shared_ptr<const ff::FieldTower> tower);

/// Lazily built, disk-backed set of Salie tables for one (p, a).
class SalieCache {
public:
    SalieCache(std::uint32_t p, std::uint32_t a, std::string dir = "",
               std::uint64_t op_cap = 10'000'000'000ull,
               std::uint64_t table_cap = 1u << 20, std::uint32_t modulus_index = 0);

    const SalieTable& get(std::uint32_t k);
    std::string file_path(std::uint32_t k) const;
    std::uint32_t p() const { return p_; }
    std::uint32_t a() const { return a_; }

private:
    std::uint32_t p_, a_, modulus_index_;
    std::string dir_;
    std::uint64_t op_cap_, table_cap_;
    std::vector<std::unique_ptr<SalieTable>> tables_; // index k
};

/// S_k* of the family via the factorization
///   S_k* = sum_z zeta^{Tr(a_{n+1} z + 1/z)} prod_i K(a_i z).
exact::CycInt exp_sum_family(const FamilyCoeffs& fc, const SalieTable& table);

// ---- L-polynomial reconstruction ----

struct PowerSums {
    FamilyCoeffs coeffs;
    std::vector<exact::CycInt> S; // S[i] = S_{i+1}*
};
PowerSums power_sums_family(const FamilyCoeffs& fc, std::uint32_t kmax, SalieCache& cache);

/// Coefficients A_0..A_m of prod (1 - alpha_i T) where the alpha_i have power
/// sums P_k = (-1)^{nvars} S_k (S is 0-based: S[i] = S_{i+1}).  Newton's
/// identities over exact cyclotomic rationals; every A_j must come out
/// integral or the sign convention / input is wrong.
std::vector<exact::CycInt> lpoly_coeffs_from_power_sums(const std::vector<exact::CycInt>& S,
                                                        int nvars, std::size_t m);

struct LPoly {
    int n = 0;
    std::uint32_t p = 0, a = 1;
    std::vector<exact::CycInt> A; // A_0 = 1; full when A.size() == 2^{n+1}+1
};
LPoly l_poly_from_power_sums(const PowerSums& ps, std::size_t m);

/// ord_q of every available coefficient (index 0..m).
std::vector<exact::Valuation> ordq_profile(const LPoly& L);

/// Lower convex hull of (k, ord_q A_k); zero coefficients contribute no point.
exact::RatPolygon q_adic_newton_polygon(const LPoly& L);

// ---- ordinariness and purity ----

enum class WitnessMode { breakpoints, full };

struct OrdinarityWitness {
    bool ordinary = false;
    WitnessMode mode = WitnessMode::breakpoints;
    // measured ord_q values at the probed abscissae (1 and n+2 in
    // breakpoints mode; all of 0..2^{n+1} in full mode)
    std::vector<std::pair<std::size_t, exact::Valuation>> measured;
    exact::RatPolygon np;   // populated in full mode
    exact::RatPolygon hodge;
};

/// Declares ordinary iff NP touches the Hodge polygon at x = 1 and x = n+2
/// (breakpoints mode; convexity, the shared endpoint and the slope-symmetry
/// argument force the rest) or iff NP equals HP everywhere (full mode).
/// Degenerate tuples are rejected.
OrdinarityWitness ordinarity_witness(const FamilyCoeffs& fc, WitnessMode mode,
                                     SalieCache& cache);

struct PurityReport {
    bool converged = false;
    bool pass = false;
    double target = 0;       // q^{(n+1)/2}
    double max_abs_err = 0;  // max | |alpha_i| - target |
    std::vector<double> moduli;
};
/// Embeds zeta -> exp(2 pi i / p), finds the reciprocal roots numerically
/// and compares every |alpha_i| against q^{(n+1)/2}.
PurityReport purity_check(const LPoly& L, double tolerance);

} // namespace lfnp::expsum
