#include "lfnp/polytope.hpp"

#include <cstdlib>

#include "lfnp/errors.hpp"
#include "lfnp/lp.hpp"

namespace lfnp::polytope {

NewtonData family_delta(int n, Variant variant) {
    if (n < 1) throw usage_error("family_delta: n >= 1 required");
    NewtonData nd;
    nd.n = n;
    nd.dim = n + 1;
    nd.variant = variant;
    nd.D = 1;

    auto unit = [&](int i, long s, long z) {
        std::vector<long> v(static_cast<std::size_t>(n + 1), 0);
        if (i >= 0) v[static_cast<std::size_t>(i)] = s;
        v[static_cast<std::size_t>(n)] = z;
        return v;
    };
    nd.vertices.push_back(unit(-1, 0, 1)); // V_0
    for (int i = 0; i < n; ++i) {
        nd.vertices.push_back(unit(i, +1, 1));
        nd.vertices.push_back(unit(i, -1, 1));
    }
    if (variant == Variant::full) nd.vertices.push_back(unit(-1, 0, -1)); // -V_0

    // delta_0: x_{n+1} = 1
    {
        std::vector<BigRat> e(static_cast<std::size_t>(n + 1), BigRat(0));
        e[static_cast<std::size_t>(n)] = 1;
        nd.faces.push_back(std::move(e));
    }
    if (variant == Variant::full) {
        // delta_c: 2 c_1 x_1 + ... + 2 c_n x_n - x_{n+1} = 1
        for (long mask = 0; mask < (1L << n); ++mask) {
            std::vector<BigRat> e(static_cast<std::size_t>(n + 1), BigRat(0));
            for (int i = 0; i < n; ++i)
                e[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? BigRat(-2) : BigRat(2);
            e[static_cast<std::size_t>(n)] = -1;
            nd.faces.push_back(std::move(e));
        }
    }
    return nd;
}

Valuation weight(const NewtonData& nd, const std::vector<long>& u) {
    if (u.size() != static_cast<std::size_t>(nd.dim))
        throw usage_error("weight: point has wrong dimension");
    if (nd.variant == Variant::bottom) {
        // C(Delta') = { sum |u_i| <= u_{n+1} }
        long s = 0;
        for (int i = 0; i < nd.n; ++i) s += std::labs(u[static_cast<std::size_t>(i)]);
        long z = u[static_cast<std::size_t>(nd.n)];
        if (s > z) return Valuation::inf();
        return Valuation::of(BigRat(z));
    }
    // origin interior: weight = max over face forms, never infinite
    BigRat best = 0;
    for (const auto& e : nd.faces) {
        BigRat val = 0;
        for (int i = 0; i < nd.dim; ++i) val += e[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        if (val > best) best = val;
    }
    return Valuation::of(best);
}

Valuation weight_lp(const NewtonData& nd, const std::vector<long>& u) {
    if (u.size() != static_cast<std::size_t>(nd.dim))
        throw usage_error("weight_lp: point has wrong dimension");
    const std::size_t rows = static_cast<std::size_t>(nd.dim);
    const std::size_t cols = nd.vertices.size();
    std::vector<std::vector<BigRat>> A(rows, std::vector<BigRat>(cols));
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) A[i][j] = BigRat(nd.vertices[j][i]);
    std::vector<BigRat> b(rows);
    for (std::size_t i = 0; i < rows; ++i) b[i] = BigRat(u[i]);
    std::vector<BigRat> c(cols, BigRat(1));
    auto r = exact::simplex_min(A, b, c);
    if (!r) return Valuation::inf();
    return Valuation::of(*r);
}

std::vector<long> lattice_counts(const NewtonData& nd, int kmax) {
    if (kmax < 0) throw usage_error("lattice_counts: kmax >= 0 required");
    // Every point of weight <= kmax satisfies |u_i| <= kmax and
    // |u_{n+1}| <= kmax; enumerate with margin 1 and assert nothing of
    // weight <= kmax touches the box boundary.
    const long hi = kmax + 1;
    std::vector<long> W(static_cast<std::size_t>(kmax) + 1, 0);
    std::vector<long> u(static_cast<std::size_t>(nd.dim), -hi);
    for (;;) {
        Valuation w = weight(nd, u);
        if (!w.infinite && w.value <= kmax) {
            bool on_boundary = false;
            for (long x : u)
                if (std::labs(x) == hi) on_boundary = true;
            if (on_boundary)
                throw internal_error("lattice_counts: box truncation (bug)");
            if (exact::rat_den(w.value) != 1)
                throw internal_error("lattice_counts: non-integral weight at D=1 (bug)");
            long k = exact::rat_num(w.value).convert_to<long>();
            W[static_cast<std::size_t>(k)]++;
        }
        // odometer
        int pos = 0;
        while (pos < nd.dim && u[static_cast<std::size_t>(pos)] == hi) {
            u[static_cast<std::size_t>(pos)] = -hi;
            ++pos;
        }
        if (pos == nd.dim) break;
        u[static_cast<std::size_t>(pos)]++;
    }
    return W;
}

static long binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

long lattice_count_closed_form(int n, Variant variant, int k) {
    if (k < 0) return 0;
    if (variant == Variant::bottom) {
        long s = 0;
        for (int i = 0; i <= n; ++i) {
            long pw = 1;
            for (int j = 0; j < n - i; ++j) pw *= 2;
            s += pw * binom(n, i) * binom(k, n - i);
        }
        return s;
    }
    return lattice_count_closed_form(n, Variant::bottom, k) +
           lattice_count_closed_form(n, Variant::bottom, k - 1);
}

long lattice_count_closed_form_alt(int n, int k) {
    if (k < 0) return 0;
    long s = 0;
    for (int i = 0; i <= n; ++i) {
        long pw = 1;
        for (int j = 0; j < n - i; ++j) pw *= 2;
        long term = pw * binom(n, i) * binom(n + k - i, k);
        s += (i % 2 == 0) ? term : -term;
    }
    return s;
}

HodgeProfile hodge_profile(const NewtonData& nd, int kmax) {
    if (kmax < nd.dim * nd.D)
        throw usage_error("hodge_profile: kmax must reach dim*D");
    HodgeProfile hp;
    hp.n = nd.n;
    hp.dim = nd.dim;
    hp.D = nd.D;
    hp.W = lattice_counts(nd, kmax);
    hp.vol_times_factorial = 1;
    for (int i = 0; i < (nd.variant == Variant::full ? nd.n + 1 : nd.n); ++i)
        hp.vol_times_factorial *= 2;

    hp.H.assign(hp.W.size(), 0);
    for (std::size_t k = 0; k < hp.W.size(); ++k) {
        long h = 0;
        for (int i = 0; i <= nd.dim; ++i) {
            long idx = static_cast<long>(k) - static_cast<long>(i) * nd.D;
            if (idx < 0) break;
            long term = binom(nd.dim, i) * hp.W[static_cast<std::size_t>(idx)];
            h += (i % 2 == 0) ? term : -term;
        }
        if (h < 0) throw internal_error("hodge_profile: negative Hodge number (wrong W)");
        hp.H[k] = h;
        hp.total += h;
    }
    for (std::size_t k = static_cast<std::size_t>(nd.dim * nd.D) + 1; k < hp.H.size(); ++k)
        if (hp.H[k] != 0)
            throw internal_error("hodge_profile: H(k) != 0 beyond dim*D (wrong W)");
    if (hp.total != hp.vol_times_factorial)
        throw internal_error("hodge_profile: sum H != dim! * Vol");
    return hp;
}

RatPolygon hodge_polygon(const HodgeProfile& profile) {
    std::vector<BigRat> slopes;
    std::vector<BigInt> lengths;
    for (std::size_t k = 0; k < profile.H.size(); ++k) {
        slopes.emplace_back(BigRat(BigInt(k), BigInt(profile.D)));
        lengths.emplace_back(profile.H[k]);
    }
    return RatPolygon::from_slope_lengths(slopes, lengths);
}

RatPolygon chain_polygon(const std::vector<long>& W, long D) {
    std::vector<BigRat> slopes;
    std::vector<BigInt> lengths;
    for (std::size_t k = 0; k < W.size(); ++k) {
        slopes.emplace_back(BigRat(BigInt(k), BigInt(D)));
        lengths.emplace_back(W[k]);
    }
    return RatPolygon::from_slope_lengths(slopes, lengths);
}

} // namespace lfnp::polytope
