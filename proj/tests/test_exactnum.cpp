#include <doctest.h>

#include <random>

#include "lfnp/cyclotomic.hpp"
#include "lfnp/fp.hpp"
#include "lfnp/lp.hpp"
#include "lfnp/smith.hpp"

using namespace lfnp;
using namespace lfnp::exact;

namespace {

CycInt random_cyc(std::uint32_t p, std::mt19937_64& rng, int span = 20) {
    std::uniform_int_distribution<int> d(-span, span);
    std::vector<BigInt> c(p - 1);
    for (auto& x : c) x = d(rng);
    return CycInt(p, std::move(c));
}

} // namespace

TEST_CASE("cyc_from_residue_vector canonicalization") {
    const std::uint32_t p = 7;
    // all-ones vector is zero
    std::vector<std::int64_t> ones(p, 1);
    CHECK(cyc_from_residue_vector(ones, p).is_zero());
    // constant in position 0 is the identity case
    std::vector<std::int64_t> c0(p, 0);
    c0[0] = 42;
    CHECK(cyc_from_residue_vector(c0, p) == CycInt::integer(p, 42));
    // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
    std::vector<std::int64_t> top(p, 0);
    top[p - 1] = 1;
    CycInt z = cyc_from_residue_vector(top, p);
    for (const auto& coord : z.coords()) CHECK(coord == -1);
    // length mismatch is a usage error
    CHECK_THROWS_AS(cyc_from_residue_vector(std::vector<std::int64_t>(p - 1, 0), p),
                    usage_error);
}

TEST_CASE("cyc_mul ring identities") {
    const std::uint32_t p = 5;
    std::mt19937_64 rng(12345);
    CycInt one = CycInt::integer(p, 1);
    for (int iter = 0; iter < 50; ++iter) {
        CycInt x = random_cyc(p, rng);
        CHECK(x * one == x);
        CycInt y = random_cyc(p, rng), z = random_cyc(p, rng);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
    // zeta * zeta^{p-1} = 1
    CHECK(CycInt::zeta_pow(p, 1) * CycInt::zeta_pow(p, p - 1) == one);
}

TEST_CASE("cyc_from_residue_vector is a ring homomorphism under convolution") {
    const std::uint32_t p = 5;
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<std::int64_t> a(p), b(p);
        for (auto& v : a) v = d(rng);
        for (auto& v : b) v = d(rng);
        std::vector<std::int64_t> conv(p, 0);
        for (std::uint32_t i = 0; i < p; ++i)
            for (std::uint32_t j = 0; j < p; ++j) conv[(i + j) % p] += a[i] * b[j];
        CHECK(cyc_from_residue_vector(conv, p) ==
              cyc_from_residue_vector(a, p) * cyc_from_residue_vector(b, p));
    }
}

TEST_CASE("valuation at (1-zeta)") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        CycInt zero(p);
        CHECK(valuation_one_minus_zeta(zero).infinite);

        CycInt omz = CycInt::integer(p, 1) - CycInt::zeta_pow(p, 1);
        CHECK(valuation_one_minus_zeta(omz) == Valuation::of(1));

        // (1-zeta)^{p-1} = p * unit: expand exactly, divide by p, check the
        // quotient is a unit (valuation 0)
        CycInt pw = CycInt::integer(p, 1);
        for (std::uint32_t i = 0; i + 1 < p; ++i) pw *= omz;
        CHECK(valuation_one_minus_zeta(pw) == Valuation::of(p - 1));
        std::vector<BigInt> qc;
        for (const auto& c : pw.coords()) {
            CHECK(c % p == 0);
            qc.push_back(c / p);
        }
        CycInt quotient(p, qc);
        CHECK(valuation_one_minus_zeta(quotient) == Valuation::of(0));

        // p itself has valuation p-1
        CHECK(valuation_one_minus_zeta(CycInt::integer(p, BigInt(p))) ==
              Valuation::of(p - 1));
    }
}

TEST_CASE("valuation is additive under products, ultrametric under sums") {
    const std::uint32_t p = 5;
    std::mt19937_64 rng(424242);
    int checked = 0;
    for (int iter = 0; iter < 80; ++iter) {
        CycInt x = random_cyc(p, rng, 6), y = random_cyc(p, rng, 6);
        if (x.is_zero() || y.is_zero()) continue;
        auto vx = valuation_one_minus_zeta(x), vy = valuation_one_minus_zeta(y);
        CHECK(valuation_one_minus_zeta(x * y) == Valuation::of(vx.value + vy.value));
        auto vs = valuation_one_minus_zeta(x + y);
        BigRat mn = vx.value < vy.value ? vx.value : vy.value;
        if (!vs.infinite) CHECK(vs.value >= mn);
        // valuation(p * x) = (p-1) + valuation(x)
        CHECK(valuation_one_minus_zeta(CycInt::integer(p, BigInt(p)) * x) ==
              Valuation::of(BigRat(p - 1) + vx.value));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("rat_mod_p basics") {
    CHECK(rat_mod_p(BigRat(1, 6), 5) == 1);
    CHECK(rat_mod_p(BigRat(0), 7) == 0);
    CHECK(rat_mod_p(BigRat(1, 2), 3) == 2);
    CHECK_THROWS_AS(rat_mod_p(BigRat(1, 5), 5), usage_error);
    CHECK(rat_mod_p(BigRat(10, 5), 5) == 2);
}

TEST_CASE("smith normal form") {
    SUBCASE("identity and 1x1") {
        IntMat I = {{1, 0}, {0, 1}};
        auto r = smith_normal_form(I);
        CHECK(r.D == I);
        IntMat two = {{BigInt(2)}};
        CHECK(smith_normal_form(two).invariant_factors == std::vector<BigInt>{BigInt(2)});
    }
    SUBCASE("random matrices: factorization, unimodularity, divisibility") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> d(-9, 9);
        for (int iter = 0; iter < 60; ++iter) {
            std::size_t n = 2 + iter % 3;
            IntMat M(n, std::vector<BigInt>(n));
            for (auto& row : M)
                for (auto& x : row) x = d(rng);
            auto r = smith_normal_form(M);
            CHECK(mat_mul(mat_mul(r.U, r.D), r.V) == M);
            CHECK(abs(mat_det(r.U)) == 1);
            CHECK(abs(mat_det(r.V)) == 1);
            for (std::size_t i = 0; i + 1 < r.invariant_factors.size(); ++i)
                CHECK(r.invariant_factors[i + 1] % r.invariant_factors[i] == 0);
            BigInt det = abs(mat_det(M));
            if (det != 0) {
                BigInt prod = 1;
                for (const auto& f : r.invariant_factors) prod *= f;
                CHECK(prod == det);
            } else {
                CHECK(r.invariant_factors.size() < n);
            }
        }
    }
    SUBCASE("family face vertex matrices have all invariant factors 1") {
        // columns: c_i e_i + e_{n+1} (i <= n) and -e_{n+1}
        for (int n : {1, 2, 3}) {
            for (long mask = 0; mask < (1 << n); ++mask) {
                IntMat M(static_cast<std::size_t>(n + 1),
                         std::vector<BigInt>(static_cast<std::size_t>(n + 1), BigInt(0)));
                for (int j = 0; j < n; ++j) {
                    M[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
                        ((mask >> j) & 1) ? -1 : 1;
                    M[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = 1;
                }
                M[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)] = -1;
                auto r = smith_normal_form(M);
                REQUIRE(r.invariant_factors.size() == static_cast<std::size_t>(n + 1));
                for (const auto& f : r.invariant_factors) CHECK(f == 1);
            }
        }
    }
}

TEST_CASE("exact simplex") {
    // min x+y st x+y = 2, x,y >= 0 -> 2
    {
        auto r = simplex_min({{BigRat(1), BigRat(1)}}, {BigRat(2)}, {BigRat(1), BigRat(1)});
        REQUIRE(r.has_value());
        CHECK(*r == 2);
    }
    // infeasible: x = -1
    {
        auto r = simplex_min({{BigRat(1)}}, {BigRat(-1)}, {BigRat(1)});
        CHECK(!r.has_value());
    }
    // degenerate/redundant rows
    {
        auto r = simplex_min({{BigRat(1), BigRat(1)}, {BigRat(2), BigRat(2)}},
                             {BigRat(3), BigRat(6)}, {BigRat(1), BigRat(2)});
        REQUIRE(r.has_value());
        CHECK(*r == 3);
    }
}

TEST_CASE("fppoly determinant matches cofactor on small random matrices") {
    const std::uint32_t p = 7;
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> coef(0, 6), expo(0, 2);
    auto rand_poly = [&](std::size_t nv) {
        FpPoly f(p, nv);
        for (int t = 0; t < 3; ++t) {
            FpPoly::Expo e(nv);
            for (auto& x : e) x = static_cast<std::uint16_t>(expo(rng));
            f.add_term(e, static_cast<std::uint32_t>(coef(rng)));
        }
        return f;
    };
    for (int iter = 0; iter < 10; ++iter) {
        std::size_t n = 3;
        std::vector<std::vector<FpPoly>> M(n, std::vector<FpPoly>(n, FpPoly(p, 2)));
        for (auto& row : M)
            for (auto& e : row) e = rand_poly(2);
        // direct 3x3 rule
        auto mulp = [](const FpPoly& a, const FpPoly& b) { return a * b; };
        FpPoly det = mulp(M[0][0], M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                     mulp(M[0][1], M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                     mulp(M[0][2], M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        CHECK(fppoly_det(M) == det);
    }
}
