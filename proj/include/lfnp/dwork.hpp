// Chain-level predictor: Artin-Hasse coefficients lambda_m, the unit-level
// Frobenius series coefficients F_r of the bottom polynomial g, the
// weight-graded blocks of the semilinear Frobenius matrix, and the
// determinants h_p(Delta', k) mod p.
//
// All chain computation happens at the minimal pi-level: with points graded
// by the weight (the last coordinate on the cone of Delta'), the normalized
// entry at (r, s) is the coefficient of pi^{p w(s) - w(r)} in F_{ps-r},
// which is a polynomial in the reduced coefficients abar_1..abar_{n+1}
// over F_p.  Everything below minimal weight vanishes mod pi.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfnp/bigint.hpp"
#include "lfnp/field.hpp"
#include "lfnp/fp.hpp"

namespace lfnp::dwork {

struct SplittingCoeffs {
    std::uint32_t p = 0;
    std::vector<exact::BigRat> lambda; // indices 0..M
    std::vector<std::uint32_t> residues; // lambda_m mod p

    const exact::BigRat& at(std::size_t m) const { return lambda.at(m); }
};

/// Exact Artin-Hasse coefficients lambda_0..lambda_M via the truncated
/// exponential of sum t^{p^i}/p^i.  Verifies the closed forms
/// lambda_m = 1/m! (m < p) and 1/m! + 1/(p (m-p)!) (p <= m <= 2p-1)
/// and p-integrality of every coefficient.
SplittingCoeffs splitting_coeffs(std::uint32_t p, std::size_t M);

/// Monomial data of g = a_1 x_{n+1}(x_1 + 1/x_1) + ... + a_{n+1} x_{n+1}.
/// Order: V_0 = e_{n+1} (coefficient a_{n+1}), then +e_i + e_{n+1},
/// -e_i + e_{n+1} for i = 1..n (coefficient a_i).
struct GMonomials {
    int n = 0;
    std::vector<std::vector<long>> V;
    std::vector<std::size_t> coeff_var; // 0-based variable index into a_1..a_{n+1}
};
GMonomials family_g_monomials(int n);

/// Unit-level F_r at prescribed total level m: the sum over nonnegative
/// integer solutions of sum u_j V_j = r with sum u_j = m of
/// prod_j lambda_{u_j} abar_{var(j)}^{u_j}, reduced mod p.  The optional
/// support mask restricts which monomials of g participate (interior
/// pieces of the boundary decomposition).
exact::FpPoly f_r_min_weight(const GMonomials& g, const SplittingCoeffs& sc,
                             const std::vector<long>& r, long m,
                             const std::vector<bool>* support = nullptr);

struct ChainBlock {
    int n = 0;
    std::uint32_t p = 0;
    int K = 0;
    std::vector<std::vector<long>> points; // weight <= K, ordered by (weight, lex)
    std::vector<long> weights;
    std::vector<std::size_t> cumulative;   // points of weight <= k, k = 0..K
    std::vector<std::vector<exact::FpPoly>> entry;
};

/// Cumulative chain block through weight K (rows/cols all points of weight
/// <= K).  K <= 3 is the supported desk scale.
ChainBlock chain_block_matrix(int n, std::uint32_t p, int K);

/// Evaluate a symbolic F_p polynomial at coefficients living in F_q.
std::uint32_t eval_fq(const exact::FpPoly& f, const ff::FieldTower& base,
                      const std::vector<std::uint32_t>& coeffs);

/// det mod p (in F_q) of the cumulative block through weight k.
std::uint32_t chain_determinant(const ChainBlock& cb, const ff::FieldTower& base,
                                const std::vector<std::uint32_t>& coeffs, int k);

struct ChainVerdict {
    std::vector<std::uint32_t> dets; // h_p(Delta',k) for k = 1, 2, ...
    bool ordinary = false;           // h != 0 for k = 1..n-1 (endpoint k = n automatic)
};
/// Chain verdict for a coefficient tuple in (F_q^*)^{n+1}.  The overload
/// taking a precomputed block is the one scans use.
ChainVerdict chain_verdict(const ChainBlock& cb, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs,
                           bool include_endpoint_det = false);
ChainVerdict chain_verdict(int n, const ff::FieldTower& base,
                           const std::vector<std::uint32_t>& coeffs,
                           bool include_endpoint_det = false);

// ---- boundary decomposition pieces ----

struct ConeSpec {
    enum class Kind { origin, face, interior };
    Kind kind = Kind::interior;
    // for Kind::face: the signed axes spanning the open face of the
    // cross-polytope base; (axis 0-based, sign +-1), strictly increasing axes
    std::vector<std::pair<int, int>> axes;

    std::string str() const;
};

/// All pieces of the interior decomposition of C(Delta'): the origin, one
/// cone per open face of the base cross-polytope, and the open cone over
/// its relative interior.  3^n + 1 pieces.
std::vector<ConeSpec> boundary_cones(int n);

/// Parse "origin" | "interior" | "face:+1,-2,..." (1-based signed axes).
ConeSpec parse_cone(const std::string& text, int n);

/// Lattice points interior to the cone with weight <= K, (weight, lex) order.
std::vector<std::vector<long>> interior_points(const ConeSpec& cone, int n, int K);

/// Chain sub-block of the restriction g_Sigma on the interior points.
std::vector<std::vector<exact::FpPoly>> interior_block(int n, std::uint32_t p,
                                                       const ConeSpec& cone, int K);

} // namespace lfnp::dwork
