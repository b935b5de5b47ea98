#include <doctest.h>

#include "lfnp/field.hpp"

using namespace lfnp;
using namespace lfnp::ff;

TEST_CASE("tower construction basics") {
    auto f3 = FieldTower::build(3, 1, 1);
    CHECK(f3->size() == 3);
    // 2 units
    CHECK(f3->mul(2, 2) == 1);

    auto f25 = FieldTower::build(5, 1, 2);
    CHECK(f25->size() == 25);
    // Lagrange: x^24 = 1 for every unit
    for (std::uint32_t x = 1; x < 25; ++x) CHECK(f25->pow(x, 24) == 1);

    auto f9 = FieldTower::build(3, 2, 1);
    CHECK(f9->trace(1) == 2); // Tr(1) = [F_9 : F_3] * 1

    CHECK_THROWS_AS(FieldTower::build(5, 1, 10), resource_error);
    CHECK_THROWS_AS(FieldTower::build(4, 1, 1), usage_error);
}

TEST_CASE("field axioms on small towers") {
    for (auto [p, a, k] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {3u, 2u, 1u}, {7u, 1u, 1u}}) {
        auto t = FieldTower::build(p, a, k);
        const std::uint32_t q = t->size();
        for (std::uint32_t x = 0; x < q; ++x) {
            CHECK(t->add(x, t->neg(x)) == 0);
            if (x) CHECK(t->mul(x, t->inv(x)) == 1);
            for (std::uint32_t y = 0; y < q; ++y) {
                CHECK(t->add(x, y) == t->add(y, x));
                CHECK(t->mul(x, y) == t->mul(y, x));
            }
        }
        // distributivity on a sample
        for (std::uint32_t x = 0; x < q; x += 2)
            for (std::uint32_t y = 1; y < q; y += 3)
                for (std::uint32_t z = 0; z < q; z += 3)
                    CHECK(t->mul(x, t->add(y, z)) == t->add(t->mul(x, y), t->mul(x, z)));
    }
}

TEST_CASE("trace properties") {
    auto t = FieldTower::build(5, 1, 2); // F_25 over F_5
    CHECK(t->trace(0) == 0);
    // additivity
    for (std::uint32_t x = 0; x < 25; ++x)
        for (std::uint32_t y = 0; y < 25; ++y)
            CHECK((t->trace(x) + t->trace(y)) % 5 == t->trace(t->add(x, y)));
    // fibers of the trace all have size q^k / p = 5
    std::vector<int> fiber(5, 0);
    for (std::uint32_t x = 0; x < 25; ++x) fiber[t->trace(x)]++;
    for (int c : fiber) CHECK(c == 5);
}

TEST_CASE("frobenius fixed field") {
    auto t = FieldTower::build(3, 1, 3); // F_27, base F_3
    int fixed = 0;
    for (std::uint32_t x = 0; x < t->size(); ++x)
        if (t->pow(x, 3) == x) ++fixed;
    CHECK(fixed == 3);

    auto t2 = FieldTower::build(3, 2, 2); // F_81 with base F_9
    int fixed2 = 0;
    for (std::uint32_t x = 1; x < t2->size(); ++x)
        if (t2->pow(x, 9) == x) ++fixed2;
    CHECK(fixed2 + 1 == 9);
}

TEST_CASE("base field embedding is a field homomorphism") {
    auto t = FieldTower::build(3, 2, 2); // F_9 inside F_81
    auto base = FieldTower::build(3, 2, 1);
    const std::uint32_t qb = base->size();
    for (std::uint32_t x = 0; x < qb; ++x) {
        for (std::uint32_t y = 0; y < qb; ++y) {
            CHECK(t->embed_base(base->add(x, y)) == t->add(t->embed_base(x), t->embed_base(y)));
            CHECK(t->embed_base(base->mul(x, y)) == t->mul(t->embed_base(x), t->embed_base(y)));
        }
        // embedded base elements are fixed by x -> x^q
        CHECK(t->pow(t->embed_base(x) ? t->embed_base(x) : 1, 9) ==
              (t->embed_base(x) ? t->embed_base(x) : 1));
    }
}

TEST_CASE("full additive character sum vanishes") {
    for (auto [p, a, k] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {3u, 2u, 1u}}) {
        auto t = FieldTower::build(p, a, k);
        CharTable ct(t);
        std::vector<std::uint32_t> all, units, zero{0};
        for (std::uint32_t x = 0; x < t->size(); ++x) {
            all.push_back(x);
            if (x) units.push_back(x);
        }
        CHECK(ct.char_sum(all).is_zero());
        CHECK(ct.char_sum(units) == exact::CycInt::integer(p, -1));
        CHECK(ct.char_sum(zero) == exact::CycInt::integer(p, 1));
    }
}

TEST_CASE("deterministic modulus enumeration") {
    // first two irreducibles are distinct and the towers differ
    auto m0 = nth_irreducible(5, 2, 0);
    auto m1 = nth_irreducible(5, 2, 1);
    CHECK(m0 != m1);
    auto t0 = FieldTower::build(5, 1, 2, 1u << 20, 0);
    auto t1 = FieldTower::build(5, 1, 2, 1u << 20, 1);
    CHECK(t0->modulus() == m0);
    CHECK(t1->modulus() == m1);
}
