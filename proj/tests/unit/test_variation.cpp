#include <cmath>

#include <doctest.h>

#include "hemas/errors.hpp"
#include "hemas/variation.hpp"

using namespace hemas;

TEST_CASE("sbx spread factor") {
    CHECK(sbx_spread(0.5, 5.0) == doctest::Approx(1.0));
    // u = 0.9, eta_c = 5: (1/(2*0.1))^(1/6)
    const double beta = sbx_spread(0.9, 5.0);
    CHECK(beta == doctest::Approx(std::pow(5.0, 1.0 / 6.0)).epsilon(1e-12));
    CHECK(beta == doctest::Approx(1.3077).epsilon(1e-4));
    // Children of p1=0, p2=1 at that draw, before clamping.
    CHECK(0.5 * ((1.0 + beta) * 0.0 + (1.0 - beta) * 1.0) ==
          doctest::Approx(-0.1539).epsilon(1e-3));
    CHECK(0.5 * ((1.0 - beta) * 0.0 + (1.0 + beta) * 1.0) ==
          doctest::Approx(1.1539).epsilon(1e-3));
}

TEST_CASE("sbx of identical parents is the identity") {
    RngStream rng(11);
    const Genotype p(8, 1.25);
    auto [c1, c2] = sbx_crossover(p, p, SbxParams{5.0, 1.0}, -5.12, 5.12, rng);
    CHECK(c1 == p);
    CHECK(c2 == p);
}

TEST_CASE("sbx rejects mismatched parents") {
    RngStream rng(1);
    CHECK_THROWS_AS(
        sbx_crossover(Genotype{0.0}, Genotype{0.0, 1.0}, SbxParams{5.0, 1.0}, -1, 1, rng),
        DimensionMismatch);
}

TEST_CASE("sbx children stay in bounds and preserve the per-gene mean") {
    RngStream rng(42);
    const double lo = -5.12, hi = 5.12;
    for (int trial = 0; trial < 500; ++trial) {
        Genotype p1(6), p2(6);
        for (int i = 0; i < 6; ++i) {
            p1[i] = rng.uniform(lo, hi);
            p2[i] = rng.uniform(lo, hi);
        }
        auto [c1, c2] = sbx_crossover(p1, p2, SbxParams{5.0, 1.0}, lo, hi, rng);
        for (int i = 0; i < 6; ++i) {
            CHECK(c1[i] >= lo);
            CHECK(c1[i] <= hi);
            CHECK(c2[i] >= lo);
            CHECK(c2[i] <= hi);
            const bool clamped = c1[i] == lo || c1[i] == hi || c2[i] == lo || c2[i] == hi;
            if (!clamped) {
                CHECK(0.5 * (c1[i] + c2[i]) ==
                      doctest::Approx(0.5 * (p1[i] + p2[i])).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("polynomial mutation delta") {
    CHECK(polynomial_delta(0.5, 20.0, 0.5, 0.5) == doctest::Approx(0.0));
    CHECK(polynomial_delta(0.1, 20.0, 0.5, 0.5) < 0.0);
    CHECK(polynomial_delta(0.9, 20.0, 0.5, 0.5) > 0.0);
}

TEST_CASE("mutation with probability 0 is the identity") {
    RngStream rng(5);
    const Genotype x{1.0, -2.0, 3.0};
    CHECK(polynomial_mutation(x, MutationParams{10.0, 0.0}, -5.12, 5.12, rng) == x);
}

TEST_CASE("mutation respects bounds, including at the boundary") {
    RngStream rng(9);
    const double lo = -5.12, hi = 5.12;
    Genotype at_bounds{lo, hi, 0.0};
    for (int trial = 0; trial < 10000; ++trial) {
        auto out = polynomial_mutation(at_bounds, MutationParams{20.0, 1.0}, lo, hi, rng);
        for (double g : out) {
            CHECK(g >= lo);
            CHECK(g <= hi);
        }
    }
}

TEST_CASE("strong mutation perturbs nearly every gene") {
    RngStream rng(17);
    Genotype x(100, 0.0);
    auto out = strong_mutation(x, -5.12, 5.12, rng);
    int changed = 0;
    for (int i = 0; i < 100; ++i) changed += out[i] != x[i];
    CHECK(changed > 90);
}

TEST_CASE("operators are deterministic under a fixed seed") {
    const Genotype p1{1.0, 2.0, 3.0};
    const Genotype p2{-1.0, 0.5, 2.0};
    RngStream a(123), b(123);
    auto ra = sbx_crossover(p1, p2, SbxParams{5.0, 1.0}, -5.12, 5.12, a);
    auto rb = sbx_crossover(p1, p2, SbxParams{5.0, 1.0}, -5.12, 5.12, b);
    CHECK(ra.first == rb.first);
    CHECK(ra.second == rb.second);

    RngStream c(99), d(99);
    CHECK(strong_mutation(p1, -5.12, 5.12, c) == strong_mutation(p1, -5.12, 5.12, d));
}
