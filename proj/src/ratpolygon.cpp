#include "lfnp/ratpolygon.hpp"

#include <algorithm>
#include <sstream>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

RatPolygon RatPolygon::from_slope_lengths(const std::vector<BigRat>& slopes,
                                          const std::vector<BigInt>& lengths) {
    if (slopes.size() != lengths.size())
        throw usage_error("RatPolygon::from_slope_lengths: size mismatch");
    RatPolygon poly;
    poly.v.emplace_back(BigRat(0), BigRat(0));
    BigRat x = 0, y = 0;
    BigRat last_slope = 0;
    bool have_side = false;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        if (lengths[i] == 0) continue;
        if (lengths[i] < 0) throw usage_error("RatPolygon: negative side length");
        if (have_side && slopes[i] < last_slope)
            throw usage_error("RatPolygon: slopes must be nondecreasing");
        if (have_side && slopes[i] == last_slope) {
            poly.v.pop_back(); // merge collinear sides
        }
        x += BigRat(lengths[i]);
        y += slopes[i] * BigRat(lengths[i]);
        poly.v.emplace_back(x, y);
        last_slope = slopes[i];
        have_side = true;
    }
    return poly;
}

RatPolygon RatPolygon::lower_hull(std::vector<std::pair<BigRat, BigRat>> pts) {
    if (pts.empty()) throw usage_error("RatPolygon::lower_hull: no points");
    std::sort(pts.begin(), pts.end());
    // keep the lowest point per x
    std::vector<std::pair<BigRat, BigRat>> uniq;
    for (auto& pt : pts) {
        if (!uniq.empty() && uniq.back().first == pt.first) continue;
        uniq.push_back(pt);
    }
    RatPolygon poly;
    for (const auto& pt : uniq) {
        while (poly.v.size() >= 2) {
            const auto& a = poly.v[poly.v.size() - 2];
            const auto& b = poly.v[poly.v.size() - 1];
            // drop b unless it turns strictly left (keeps convexity strict)
            BigRat cross = (b.first - a.first) * (pt.second - a.second) -
                           (pt.first - a.first) * (b.second - a.second);
            if (cross > 0) break;
            poly.v.pop_back();
        }
        poly.v.push_back(pt);
    }
    return poly;
}

BigRat RatPolygon::value_at(const BigRat& x) const {
    if (v.empty() || x < v.front().first || x > v.back().first)
        throw usage_error("RatPolygon::value_at: x out of range");
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (x > v[i + 1].first) continue;
        const BigRat dx = v[i + 1].first - v[i].first;
        return v[i].second + (v[i + 1].second - v[i].second) * (x - v[i].first) / dx;
    }
    return v.back().second;
}

std::vector<BigRat> RatPolygon::unit_slopes() const {
    std::vector<BigRat> out;
    if (v.size() < 2) return out;
    BigRat x = v.front().first;
    while (x < v.back().first) {
        out.push_back(value_at(x + 1) - value_at(x));
        x += 1;
    }
    return out;
}

std::string RatPolygon::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << " ";
        os << "(" << v[i].first.str() << "," << v[i].second.str() << ")";
    }
    return os.str();
}

} // namespace lfnp::exact
