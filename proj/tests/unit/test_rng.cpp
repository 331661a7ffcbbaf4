#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "ccrsim/rng.hpp"

using ccrsim::Rng;

TEST_CASE("same seed, same stream") {
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform stays in [0, 1)") {
    Rng r(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("uniform_index covers its range evenly") {
    Rng r(7);
    const int n = 8, draws = 80000;
    std::vector<int> hist(n, 0);
    for (int i = 0; i < draws; ++i) ++hist[r.uniform_index(n)];
    double chi2 = 0.0;
    const double expect = static_cast<double>(draws) / n;
    for (int h : hist) chi2 += (h - expect) * (h - expect) / expect;
    // 7 degrees of freedom, p = 0.001 critical value.
    CHECK(chi2 < 24.32);
}

TEST_CASE("normal moments") {
    Rng r(3);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.01);
}

TEST_CASE("exponential mean") {
    Rng r(4);
    const int n = 200000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = r.exponential(2.0);
        REQUIRE(x >= 0.0);
        s += x;
    }
    CHECK(std::abs(s / n - 2.0) < 0.02);
}

TEST_CASE("derived streams differ from each other and from the base") {
    using namespace ccrsim::streams;
    std::set<std::uint64_t> seeds;
    for (auto s : {kScenario, kMobility, kChannel, kTrajectory, kPolicy}) {
        seeds.insert(ccrsim::derive_seed(42, s));
    }
    seeds.insert(42);
    CHECK(seeds.size() == 6);
    CHECK(ccrsim::derive_seed(42, kChannel) == ccrsim::derive_seed(42, kChannel));
    CHECK(ccrsim::derive_seed(42, kChannel) != ccrsim::derive_seed(43, kChannel));
}
