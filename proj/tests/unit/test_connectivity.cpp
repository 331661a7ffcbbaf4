#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ccrsim/connectivity.hpp"
#include "ccrsim/rng.hpp"

using namespace ccrsim;

namespace {

// Psi at t (0-based) is 1 iff t >= N-1 and outcomes t-N+1..t all pass.
std::vector<bool> brute_window(const std::vector<bool>& outcomes, int N) {
    std::vector<bool> psi(outcomes.size(), false);
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        if (t + 1 < static_cast<std::size_t>(N)) continue;
        bool all = true;
        for (std::size_t k = t + 1 - N; k <= t; ++k) all = all && outcomes[k];
        psi[t] = all;
    }
    return psi;
}

std::vector<bool> tracked(const std::vector<bool>& outcomes, int N) {
    WindowTracker w(N);
    std::vector<bool> psi;
    for (bool o : outcomes) psi.push_back(w.update(o));
    return psi;
}

double brute_ccr_v2i(const std::vector<std::vector<bool>>& psi, int N) {
    const std::size_t V = psi.size(), T = psi[0].size();
    double sum = 0.0;
    for (std::size_t v = 0; v < V; ++v)
        for (std::size_t t = N; t <= T; ++t) sum += psi[v][t - 1] ? 1.0 : 0.0;
    return sum / (static_cast<double>(V) * static_cast<double>(T - N + 1));
}

double brute_objective(const EpisodeTrace& tr) {
    double delivered = 0.0;
    for (bool d : tr.delivered) delivered += d ? 1.0 : 0.0;
    delivered /= static_cast<double>(tr.delivered.size());
    double J = 0.0;
    for (bool o : tr.is_target) J += o ? 1.0 : 0.0;
    const double others = static_cast<double>(tr.is_target.size()) - J;
    double total = 0.0;
    for (const auto& row : tr.psi) {
        double a = 0.0, b = 0.0;
        for (std::size_t v = 0; v < row.size(); ++v) (tr.is_target[v] ? b : a) += row[v] ? 1.0 : 0.0;
        total += delivered + (others > 0 ? a / others : 0.0) + (J > 0 ? b / J : 0.0);
    }
    return total / static_cast<double>(tr.psi.size());
}

}  // namespace

TEST_CASE("window example series") {
    const std::vector<bool> out{true, true, false, true, true};
    CHECK(tracked(out, 2) == std::vector<bool>{false, true, false, false, true});
}

TEST_CASE("saturated window stays on") {
    WindowTracker w(3);
    for (int t = 1; t <= 50; ++t) CHECK(w.update(true) == (t >= 3));
    CHECK(w.streak() == 3);
    CHECK(w.elapsed() == 50);
}

TEST_CASE("unit window follows the outcome") {
    const std::vector<bool> out{true, false, false, true, false, true, true};
    CHECK(tracked(out, 1) == out);
}

TEST_CASE("window equivalence on random series") {
    Rng rng(12);
    for (int trial = 0; trial < 5000; ++trial) {
        const int len = 1 + rng.uniform_int(64);
        const int N = 1 + rng.uniform_int(8);
        std::vector<bool> out(static_cast<std::size_t>(len));
        for (auto&& o : out) o = rng.bernoulli(0.8);
        REQUIRE(tracked(out, N) == brute_window(out, N));
    }
}

TEST_CASE("window rejects N < 1") { CHECK_THROWS(WindowTracker(0)); }

TEST_CASE("payload delivered after one fast slot") {
    PayloadTracker p(8.0 * 1060.0);
    CHECK(p.update(true, 8.48e6, 1e-3) == 0.0);
    CHECK(p.delivered());
}

TEST_CASE("payload never scheduled stays full") {
    PayloadTracker p(8480.0);
    for (int t = 0; t < 100; ++t) p.update(false, 1e9, 1e-3);
    CHECK(p.remaining() == 8480.0);
    CHECK_FALSE(p.delivered());
}

TEST_CASE("payload delivered exactly at the deadline") {
    const double K = 8480.0, dt = 1e-3;
    const int T = 100;
    const double r = K / (T * dt);
    PayloadTracker p(K);
    for (int t = 1; t <= T; ++t) {
        p.update(true, r, dt);
        if (t < T) REQUIRE_FALSE(p.delivered());
    }
    CHECK(p.delivered());
    CHECK(p.remaining() == 0.0);
}

TEST_CASE("payload conservation and monotonicity") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double K = 1000.0 + 10000.0 * rng.uniform();
        PayloadTracker p(K);
        double credited = 0.0, prev = K;
        for (int t = 0; t < 100; ++t) {
            p.update(rng.bernoulli(0.7), 2e5 * rng.uniform(), 1e-3);
            credited += p.last_credit();
            REQUIRE(p.remaining() <= prev);
            REQUIRE(p.remaining() >= 0.0);
            REQUIRE(p.delivered() == (p.remaining() == 0.0));
            prev = p.remaining();
        }
        CHECK(std::abs(credited - (K - p.remaining())) <= 1e-9 * K);
    }
}

TEST_CASE("V2I CCR") {
    const std::vector<std::vector<bool>> ones(3, std::vector<bool>(10, true));
    CHECK(ccr_v2i(ones, 4) == 1.0);
    const std::vector<std::vector<bool>> zeros(3, std::vector<bool>(10, false));
    CHECK(ccr_v2i(zeros, 4) == 0.0);

    Rng rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const int V = 1 + rng.uniform_int(12), T = 6 + rng.uniform_int(40), N = 1 + rng.uniform_int(6);
        std::vector<std::vector<bool>> psi(V, std::vector<bool>(T));
        for (auto& s : psi)
            for (auto&& x : s) x = rng.bernoulli(0.5);
        REQUIRE(ccr_v2i(psi, N) == brute_ccr_v2i(psi, N));
    }
    CHECK_THROWS(ccr_v2i(std::vector<std::vector<bool>>(2, std::vector<bool>(3)), 4));
    CHECK_THROWS(ccr_v2i({}, 1));
}

TEST_CASE("V2I CCR is nonincreasing in the window") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int V = 1 + rng.uniform_int(6), T = 8 + rng.uniform_int(60);
        std::vector<std::vector<bool>> outcomes(V, std::vector<bool>(T));
        for (auto& s : outcomes)
            for (auto&& x : s) x = rng.bernoulli(0.85);
        double prev = 2.0;
        for (int N = 1; N <= 7; ++N) {
            std::vector<std::vector<bool>> psi;
            for (const auto& s : outcomes) psi.push_back(tracked(s, N));
            const double c = ccr_v2i(psi, N);
            REQUIRE(c <= prev);
            prev = c;
        }
    }
}

TEST_CASE("V2V CCR") {
    CHECK(ccr_v2v({true, true, false, true}) == 0.75);
    CHECK(ccr_v2v({true, true}) == 1.0);
    CHECK_THROWS(ccr_v2v({}));
    Rng rng(2);
    std::vector<bool> flags(1000);
    int hits = 0;
    for (auto&& f : flags) {
        f = rng.bernoulli(0.37);
        hits += f ? 1 : 0;
    }
    CHECK(ccr_v2v(flags) == hits / 1000.0);
}

TEST_CASE("objective on a saturated five-slot trace") {
    EpisodeTrace tr;
    tr.window = 2;
    tr.is_target = {false, false, true};
    for (int t = 0; t < 5; ++t) tr.psi.push_back(std::vector<bool>(3, t >= 1));
    tr.delivered = {true, true};
    tr.rewards.assign(5, 0.0);
    CHECK(objective_value(tr) == doctest::Approx(brute_objective(tr)).epsilon(1e-15));
    CHECK(objective_value(tr) == doctest::Approx(2.6).epsilon(1e-15));
}

TEST_CASE("objective of an all-zero trace") {
    EpisodeTrace tr;
    tr.window = 1;
    tr.is_target = {false, true};
    tr.psi.assign(4, std::vector<bool>(2, false));
    tr.delivered = {false, false};
    CHECK(objective_value(tr) == 0.0);
}

TEST_CASE("objective single vehicle, single target, single link") {
    EpisodeTrace tr;
    tr.window = 1;
    tr.is_target = {false, true};
    tr.psi = {{true, false}, {true, true}, {false, true}};
    tr.delivered = {true};
    // (1/3) * [(1 + 1 + 0) + (1 + 1 + 1) + (1 + 0 + 1)]
    CHECK(std::abs(objective_value(tr) - 7.0 / 3.0) < 1e-12);
}

TEST_CASE("objective matches brute force on random traces") {
    Rng rng(6);
    for (int trial = 0; trial < 300; ++trial) {
        EpisodeTrace tr;
        const int V = 1 + rng.uniform_int(8), T = 1 + rng.uniform_int(30), D = 1 + rng.uniform_int(V);
        tr.window = 1;
        for (int v = 0; v < V; ++v) tr.is_target.push_back(rng.bernoulli(0.3));
        for (int t = 0; t < T; ++t) {
            std::vector<bool> row(V);
            for (auto&& x : row) x = rng.bernoulli(0.5);
            tr.psi.push_back(row);
        }
        for (int d = 0; d < D; ++d) tr.delivered.push_back(rng.bernoulli(0.5));
        CHECK(std::abs(objective_value(tr) - brute_objective(tr)) < 1e-12);
    }
}

TEST_CASE("episode summary and report") {
    EpisodeTrace tr;
    tr.window = 2;
    tr.is_target = {false, true};
    tr.psi = {{false, false}, {true, false}, {true, true}, {false, true}};
    tr.delivered = {true, false};
    tr.rewards = {1.0, 2.0, 3.0, 4.0};
    const auto m = summarize_episode(tr);
    CHECK(m.ccr_v2i == 4.0 / 6.0);
    CHECK(m.ccr_v2v == 0.5);
    CHECK(m.ccr_total == m.ccr_v2i + m.ccr_v2v);
    CHECK(m.mean_reward == 2.5);

    CCRReport a, b;
    a.add({0.2, 1.0, 1.2, 0.0, 0.0});
    b.add({0.4, 0.5, 0.9, 0.0, 0.0});
    a.merge(b);
    CHECK(a.runs() == 2);
    CHECK(a.ccr_v2i().mean == doctest::Approx(0.3));
    CHECK(a.ccr_v2i().std == doctest::Approx(std::sqrt(0.02)));
    CHECK(a.ccr_total().mean == doctest::Approx(1.05));
}
