#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "hemas/errors.hpp"
#include "hemas/rng.hpp"
#include "hemas/stats.hpp"

using namespace hemas;

namespace {

// Independent mid-rank oracle: count comparisons directly.
std::vector<double> brute_force_ranks(const std::vector<double>& values) {
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int less = 0, equal = 0;
        for (double v : values) {
            less += v < values[i];
            equal += v == values[i];
        }
        ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return ranks;
}

}  // namespace

TEST_CASE("describe") {
    auto d = describe({"a", {2, 2, 2}});
    CHECK(d.mean == doctest::Approx(2));
    CHECK(d.median == doctest::Approx(2));
    CHECK(d.sd == doctest::Approx(0));
    CHECK(d.min == doctest::Approx(2));
    CHECK(d.max == doctest::Approx(2));

    d = describe({"b", {4, 1, 3, 2}});
    CHECK(d.mean == doctest::Approx(2.5));
    CHECK(d.median == doctest::Approx(2.5));
    CHECK(d.sd == doctest::Approx(1.2910).epsilon(1e-4));
    CHECK(d.min == doctest::Approx(1));
    CHECK(d.max == doctest::Approx(4));

    d = describe({"c", {5}});
    CHECK(d.mean == doctest::Approx(5));
    CHECK(d.sd == doctest::Approx(0));

    CHECK_THROWS_AS(describe({"empty", {}}), EmptyInput);
}

TEST_CASE("kruskal-wallis on fully separated small groups") {
    auto result = kruskal_wallis({{"a", {1, 2, 3}}, {"b", {4, 5, 6}}});
    CHECK(result.H == doctest::Approx(3.857142857).epsilon(1e-6));
    CHECK(result.p == doctest::Approx(0.04953).epsilon(1e-3));
}

TEST_CASE("kruskal-wallis degenerate and invariance cases") {
    auto same = kruskal_wallis({{"a", {1, 1, 1}}, {"b", {1, 1, 1}}});
    CHECK(same.H == doctest::Approx(0.0));
    CHECK(same.p == doctest::Approx(1.0));

    auto r1 = kruskal_wallis({{"a", {1, 5, 9}}, {"b", {2, 2, 7}}, {"c", {3, 8, 8}}});
    auto r2 = kruskal_wallis({{"c", {3, 8, 8}}, {"a", {1, 5, 9}}, {"b", {2, 2, 7}}});
    CHECK(r1.H == doctest::Approx(r2.H).epsilon(1e-12));

    CHECK_THROWS_AS(kruskal_wallis({{"only", {1, 2}}}), InvalidConfig);
    CHECK_THROWS_AS(kruskal_wallis({{"a", {1}}, {"b", {}}}), EmptyInput);
}

TEST_CASE("kruskal-wallis on two groups matches the normal rank-sum approximation") {
    RngStream rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        SampleSet a{"a", {}}, b{"b", {}};
        for (int i = 0; i < 30; ++i) {
            a.values.push_back(rng.uniform(0.0, 1.0));
            b.values.push_back(rng.uniform(0.0, 1.0) + 0.2);
        }
        const auto kw = kruskal_wallis({a, b});
        const auto dunn = dunn_test({a, b});
        CHECK(std::abs(kw.p - dunn[0].p_unadjusted) < 0.01);
    }
}

TEST_CASE("dunn: fully separated ranks give a huge z") {
    SampleSet a{"low", {}}, b{"high", {}};
    for (int i = 1; i <= 30; ++i) a.values.push_back(i);
    for (int i = 31; i <= 60; ++i) b.values.push_back(i);
    auto pairs = dunn_test({a, b});
    REQUIRE(pairs.size() == 1);
    CHECK(std::abs(pairs[0].z) == doctest::Approx(6.6529).epsilon(1e-3));
    CHECK(pairs[0].p_unadjusted < 1e-6);
}

TEST_CASE("dunn: identical groups, symmetry, bonferroni") {
    SampleSet a{"a", {1, 2, 3, 4}};
    SampleSet same_again{"a", {1, 2, 3, 4}};
    auto self_pair = dunn_test({a, same_again});
    CHECK(self_pair[0].z == doctest::Approx(0.0));
    CHECK(self_pair[0].p_unadjusted == doctest::Approx(1.0));

    SampleSet b{"b", {2, 3, 9, 1}};
    SampleSet c{"c", {5, 5, 0, 7}};
    auto abc = dunn_test({a, b, c});
    REQUIRE(abc.size() == 3);
    auto cba = dunn_test({c, b, a});
    // Pair ordering invariance: the (a, c) comparison appears in both runs.
    const auto find_pair = [](const std::vector<DunnPair>& pairs, const std::string& x,
                              const std::string& y) {
        for (const auto& p : pairs) {
            if ((p.a == x && p.b == y) || (p.a == y && p.b == x)) return p;
        }
        REQUIRE(false);
        return pairs.front();
    };
    const auto p1 = find_pair(abc, "a", "c");
    const auto p2 = find_pair(cba, "a", "c");
    CHECK(p1.p_unadjusted == doctest::Approx(p2.p_unadjusted).epsilon(1e-12));
    CHECK(std::abs(p1.z) == doctest::Approx(std::abs(p2.z)).epsilon(1e-12));
    for (const auto& p : abc) {
        CHECK(p.p_bonferroni >= p.p_unadjusted);
        CHECK(p.p_bonferroni <= doctest::Approx(std::min(1.0, p.p_unadjusted * 3)));
    }
}

TEST_CASE("mid-ranks equal the brute-force oracle on small tied inputs") {
    RngStream rng(44);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.index_below(8);
        std::vector<double> values(n);
        for (auto& v : values) v = static_cast<double>(rng.index_below(4));
        const auto expected = brute_force_ranks(values);
        const auto actual = midranks(values);
        REQUIRE(actual.size() == expected.size());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(actual[i] == doctest::Approx(expected[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("monotone separation: widening the gap never increases the dunn p") {
    SampleSet base{"base", {}};
    RngStream rng(55);
    for (int i = 0; i < 30; ++i) base.values.push_back(rng.uniform(0.0, 10.0));
    double previous_p = 1.1;
    for (double shift : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        SampleSet moved{"moved", base.values};
        for (auto& v : moved.values) v += shift;
        const auto p = dunn_test({base, moved})[0].p_unadjusted;
        CHECK(p <= previous_p + 1e-12);
        previous_p = p;
    }
}

TEST_CASE("chi-square and normal tails") {
    CHECK(chi_squared_sf(0.0, 3) == doctest::Approx(1.0));
    CHECK(chi_squared_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_squared_sf(5.991464547107979, 2) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(normal_two_sided_p(0.0) == doctest::Approx(1.0));
    CHECK(normal_two_sided_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-9));
}
