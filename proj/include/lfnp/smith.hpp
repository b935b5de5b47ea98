// Smith normal form of small integer matrices.
#pragma once

#include <vector>

#include "lfnp/bigint.hpp"

namespace lfnp::exact {

using IntMat = std::vector<std::vector<BigInt>>;

struct SmithResult {
    IntMat U, D, V;   // M = U * D * V, U and V unimodular, D diagonal d1 | d2 | ...
    std::vector<BigInt> invariant_factors; // nonzero diagonal entries of D, nonnegative
};

/// Elementary row/column reduction, pivot = smallest nonzero |entry|.
/// Fine for the <= 5x5 matrices used here.
SmithResult smith_normal_form(const IntMat& M);

BigInt mat_det(const IntMat& M);
IntMat mat_mul(const IntMat& A, const IntMat& B);

} // namespace lfnp::exact
