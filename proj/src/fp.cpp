#include "lfnp/fp.hpp"

#include <sstream>
#include <unordered_map>

namespace lfnp::exact {

std::string FpPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (c != 1) { os << c; printed = true; }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (!e[i]) continue;
            if (printed) os << "*";
            if (i < names.size()) os << names[i];
            else os << "a" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            printed = true;
        }
        if (!printed) os << c;
    }
    return os.str();
}

FpPoly fppoly_det(const std::vector<std::vector<FpPoly>>& M) {
    const std::size_t n = M.size();
    if (n == 0) throw usage_error("fppoly_det: empty matrix");
    for (const auto& r : M)
        if (r.size() != n) throw usage_error("fppoly_det: not square");
    if (n > 16) throw resource_error("fppoly_det: matrix too large for symbolic expansion");

    const std::uint32_t p = M[0][0].p();
    const std::size_t nv = M[0][0].nvars();

    // D[mask] = det of rows [0, popcount(mask)) x columns in mask.
    std::unordered_map<std::uint32_t, FpPoly> memo;
    memo.emplace(0u, FpPoly::constant(p, nv, 1));

    // fill by increasing popcount
    std::vector<std::vector<std::uint32_t>> by_pop(n + 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
        by_pop[static_cast<std::size_t>(__builtin_popcount(mask))].push_back(mask);

    for (std::size_t r = 1; r <= n; ++r) {
        for (std::uint32_t mask : by_pop[r]) {
            FpPoly acc(p, nv);
            std::size_t pos = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                const FpPoly& entry = M[r - 1][j];
                if (!entry.is_zero()) {
                    const FpPoly& sub = memo.at(mask & ~(1u << j));
                    FpPoly term = entry * sub;
                    if ((r - 1 + pos) % 2 == 1) term = FpPoly(p, nv) - term;
                    acc = acc + term;
                }
                ++pos;
            }
            memo.emplace(mask, std::move(acc));
        }
        // rows below r never need masks of popcount < r again
    }
    return memo.at((n == 32 ? 0xffffffffu : ((1u << n) - 1)));
}

} // namespace lfnp::exact
