// Exact rational linear programming (two-phase simplex, Bland's rule).
#pragma once

#include <optional>
#include <vector>

#include "lfnp/bigint.hpp"

namespace lfnp::exact {

/// minimize c.x subject to A x = b, x >= 0, all data rational.
/// Returns nullopt when infeasible; throws internal_error on an unbounded
/// program (cannot happen for the weight LPs used here).
std::optional<BigRat> simplex_min(const std::vector<std::vector<BigRat>>& A,
                                  const std::vector<BigRat>& b,
                                  const std::vector<BigRat>& c);

} // namespace lfnp::exact
