#include <doctest.h>

#include "lfnp/polytope.hpp"

using namespace lfnp;
using namespace lfnp::polytope;

TEST_CASE("family polytope shape") {
    auto d2 = family_delta(2, Variant::full);
    CHECK(d2.faces.size() == 5); // 2^n + 1
    CHECK(d2.vertices.size() == 6);
    auto d1 = family_delta(1, Variant::full);
    // vertices (0,1),(1,1),(-1,1),(0,-1)
    CHECK(d1.vertices == std::vector<std::vector<long>>{{0, 1}, {1, 1}, {-1, 1}, {0, -1}});
    auto b3 = family_delta(3, Variant::bottom);
    CHECK(b3.faces.size() == 1);
}

TEST_CASE("weight examples") {
    auto full2 = family_delta(2, Variant::full);
    CHECK(weight(full2, {0, 0, 0}) == Valuation::of(0));
    CHECK(weight(full2, {0, 0, -1}) == Valuation::of(1));

    auto bot3 = family_delta(3, Variant::bottom);
    CHECK(weight(bot3, {1, 1, 0, 2}) == Valuation::of(2));
    CHECK(weight(bot3, {1, 0, 0, 0}).infinite); // off the cone
    CHECK(weight_lp(bot3, {1, 0, 0, 0}).infinite);
}

TEST_CASE("face-form weight equals the exact LP") {
    SUBCASE("n=2 full, |coords| <= 6") {
        auto nd = family_delta(2, Variant::full);
        for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y)
                for (long z = -6; z <= 6; ++z) {
                    auto a = weight(nd, {x, y, z});
                    auto b = weight_lp(nd, {x, y, z});
                    CHECK(a == b);
                    // closed form from the face list
                    long want = std::max(z, 2 * (std::labs(x) + std::labs(y)) - z);
                    CHECK(a == Valuation::of(want));
                }
    }
    SUBCASE("n=2 bottom") {
        auto nd = family_delta(2, Variant::bottom);
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y)
                for (long z = -4; z <= 4; ++z) CHECK(weight(nd, {x, y, z}) == weight_lp(nd, {x, y, z}));
    }
    SUBCASE("n=3 sampled box") {
        for (auto variant : {Variant::full, Variant::bottom}) {
            auto nd = family_delta(3, variant);
            for (long x = -2; x <= 2; ++x)
                for (long y = -2; y <= 2; ++y)
                    for (long z = -2; z <= 2; ++z)
                        for (long w = -3; w <= 3; ++w)
                            CHECK(weight(nd, {x, y, z, w}) == weight_lp(nd, {x, y, z, w}));
        }
    }
}

TEST_CASE("weight homogeneity and subadditivity") {
    for (auto variant : {Variant::full, Variant::bottom}) {
        auto nd = family_delta(2, variant);
        for (long x = -4; x <= 4; x += 2)
            for (long y = -4; y <= 4; y += 1)
                for (long z = -4; z <= 4; z += 1) {
                    auto w = weight(nd, {x, y, z});
                    for (long m = 0; m <= 3; ++m) {
                        auto wm = weight(nd, {m * x, m * y, m * z});
                        if (m == 0) {
                            CHECK(wm == Valuation::of(0));
                        } else if (w.infinite) {
                            CHECK(wm.infinite);
                        } else {
                            CHECK(wm == Valuation::of(w.value * m));
                        }
                    }
                    auto u = weight(nd, {x + 1, y, z + 1});
                    auto v = weight(nd, {-1, 0, -1});
                    (void)u; (void)v;
                }
        // subadditivity on a grid
        for (long x1 = -2; x1 <= 2; ++x1)
            for (long z1 = -2; z1 <= 2; ++z1)
                for (long x2 = -2; x2 <= 2; ++x2)
                    for (long z2 = -2; z2 <= 2; ++z2) {
                        auto wa = weight(nd, {x1, 1, z1});
                        auto wb = weight(nd, {x2, -1, z2});
                        auto ws = weight(nd, {x1 + x2, 0, z1 + z2});
                        if (!wa.infinite && !wb.infinite && !ws.infinite)
                            CHECK(ws.value <= wa.value + wb.value);
                        if (wa.infinite || wb.infinite) continue;
                        CHECK(!ws.infinite); // cone is closed under addition
                    }
    }
}

TEST_CASE("lattice counts match the paper tables and closed forms") {
    auto b2 = family_delta(2, Variant::bottom);
    CHECK(lattice_counts(b2, 3) == std::vector<long>{1, 5, 13, 25});
    auto f2 = family_delta(2, Variant::full);
    CHECK(lattice_counts(f2, 3) == std::vector<long>{1, 6, 18, 38});
    auto f3 = family_delta(3, Variant::full);
    CHECK(lattice_counts(f3, 4) == std::vector<long>{1, 8, 32, 88, 192});
    auto b3 = family_delta(3, Variant::bottom);
    CHECK(lattice_counts(b3, 4) == std::vector<long>{1, 7, 25, 63, 129});

    for (int n : {1, 2, 3}) {
        for (auto variant : {Variant::full, Variant::bottom}) {
            auto nd = family_delta(n, variant);
            auto W = lattice_counts(nd, 5);
            for (int k = 0; k <= 5; ++k)
                CHECK(W[static_cast<std::size_t>(k)] == lattice_count_closed_form(n, variant, k));
        }
        // remark's alternative formula for the bottom counts
        for (int k = 0; k <= 5; ++k)
            CHECK(lattice_count_closed_form(n, Variant::bottom, k) ==
                  lattice_count_closed_form_alt(n, k));
    }
}

TEST_CASE("hodge profiles match the paper tables") {
    auto hp2 = hodge_profile(family_delta(2, Variant::full), 4);
    CHECK(std::vector<long>(hp2.H.begin(), hp2.H.begin() + 4) == std::vector<long>{1, 3, 3, 1});
    CHECK(hp2.total == 8);
    CHECK(hp2.vol_times_factorial == 8);

    auto hp2b = hodge_profile(family_delta(2, Variant::bottom), 4);
    CHECK(std::vector<long>(hp2b.H.begin(), hp2b.H.begin() + 4) == std::vector<long>{1, 2, 1, 0});

    auto hp3 = hodge_profile(family_delta(3, Variant::full), 5);
    CHECK(std::vector<long>(hp3.H.begin(), hp3.H.begin() + 5) == std::vector<long>{1, 4, 6, 4, 1});

    auto hp3b = hodge_profile(family_delta(3, Variant::bottom), 5);
    CHECK(std::vector<long>(hp3b.H.begin(), hp3b.H.begin() + 5) == std::vector<long>{1, 3, 3, 1, 0});
}

TEST_CASE("hodge and chain polygons") {
    auto hp2 = hodge_profile(family_delta(2, Variant::full), 4);
    auto poly = hodge_polygon(hp2);
    exact::RatPolygon want;
    want.v = {{0, 0}, {1, 0}, {4, 3}, {7, 9}, {8, 12}};
    CHECK(poly == want);

    auto hp3b = hodge_profile(family_delta(3, Variant::bottom), 5);
    auto poly3b = hodge_polygon(hp3b);
    CHECK(poly3b.v.back() == std::pair<exact::BigRat, exact::BigRat>(8, 12));
    // same break points (4,3) and (7,9)
    CHECK(poly3b.v == want.v);

    // H = (1) alone gives the segment (0,0)-(1,0)
    HodgeProfile trivial;
    trivial.D = 1;
    trivial.H = {1};
    auto tp = hodge_polygon(trivial);
    exact::RatPolygon seg;
    seg.v = {{0, 0}, {1, 0}};
    CHECK(tp == seg);

    // chain polygon P(Delta') for n=2: sides of slope k, length W(k)
    auto P = chain_polygon({1, 5, 13}, 1);
    exact::RatPolygon wantP;
    wantP.v = {{0, 0}, {1, 0}, {6, 5}, {19, 31}};
    CHECK(P == wantP);
}

TEST_CASE("HP slope multiset symmetric under k -> (n+1)-k") {
    for (int n : {1, 2, 3}) {
        auto hp = hodge_profile(family_delta(n, Variant::full), n + 2);
        for (int k = 0; k <= n + 1; ++k)
            CHECK(hp.H[static_cast<std::size_t>(k)] ==
                  hp.H[static_cast<std::size_t>(n + 1 - k)]);
        long sum = 0;
        for (long h : hp.H) sum += h;
        CHECK(sum == (1L << (n + 1))); // degree 2^{n+1}
    }
}
