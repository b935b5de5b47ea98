// Lower-convex polygons with rational vertices.  Newton polygons, Hodge
// polygons and chain polygons all share this shape.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lfnp/bigint.hpp"

namespace lfnp::exact {

struct RatPolygon {
    // vertices, x strictly increasing, slopes strictly increasing between
    // consecutive segments; first vertex (0,0) for the polygons built here
    std::vector<std::pair<BigRat, BigRat>> v;

    /// Polygon starting at (0,0) with a side of slope slope[i] and horizontal
    /// length len[i] for each i (zero lengths skipped, equal slopes merged).
    static RatPolygon from_slope_lengths(const std::vector<BigRat>& slopes,
                                         const std::vector<BigInt>& lengths);

    /// Lower convex closure of a point set (x values need not be distinct).
    static RatPolygon lower_hull(std::vector<std::pair<BigRat, BigRat>> pts);

    bool operator==(const RatPolygon& o) const { return v == o.v; }

    BigRat x_min() const { return v.front().first; }
    BigRat x_max() const { return v.back().first; }
    /// Value of the piecewise-linear function at x (must lie in range).
    BigRat value_at(const BigRat& x) const;
    /// Slopes on the unit intervals [i, i+1), i integer, over the x-range.
    std::vector<BigRat> unit_slopes() const;

    std::string str() const;
};

} // namespace lfnp::exact
