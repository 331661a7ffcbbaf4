#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccrsim/scenario.hpp"

using namespace ccrsim;

namespace {

ScenarioConfig default_scenario(std::uint64_t seed = 42) {
    ScenarioConfig c;
    c.n_vehicles = 12;
    c.n_targets = 2;
    c.seed = seed;
    return c;
}

int nearest_other(const std::vector<VehicleState>& s, int v) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int n = 0; n < static_cast<int>(s.size()); ++n) {
        if (n == v) continue;
        const double dx = s[n].position.x - s[v].position.x;
        const double dy = s[n].position.y - s[v].position.y;
        const double d = std::sqrt(dx * dx + dy * dy);
        if (d < best_d) {
            best_d = d;
            best = n;
        }
    }
    return best;
}

bool on_some_lane(const RoadGrid& g, const VehicleState& v) {
    const double tol = 1e-6;
    const double dx = v.velocity.x, dy = v.velocity.y;
    const double speed = std::hypot(dx, dy);
    if (speed == 0.0) return true;
    const double ux = dx / speed, uy = dy / speed;
    if (std::abs(uy) < 1e-12) {
        for (double c : g.horizontal_roads())
            for (int lane = 0; lane < 2; ++lane)
                if (std::abs(v.position.y - g.lane_coordinate(c, lane, ux, 0.0)) < tol) return true;
    } else if (std::abs(ux) < 1e-12) {
        for (double c : g.vertical_roads())
            for (int lane = 0; lane < 2; ++lane)
                if (std::abs(v.position.x - g.lane_coordinate(c, lane, 0.0, uy)) < tol) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("twelve vehicles, two targets, twelve pairings") {
    const auto config = default_scenario();
    const auto s = build_grid_scenario(config, 42);
    REQUIRE(s.size() == 12);
    CHECK(std::count_if(s.begin(), s.end(), [](const auto& v) { return v.is_target; }) == 2);
    CHECK(v2v_links(s).size() == 12);
    for (const auto& v : s) {
        REQUIRE(v.v2v_peer.has_value());
        CHECK(*v.v2v_peer != v.id);
        CHECK(*v.v2v_peer == nearest_other(s, v.id));
        CHECK(v.position.x >= 0.0);
        CHECK(v.position.x <= config.region_width_m);
        CHECK(v.position.y >= 0.0);
        CHECK(v.position.y <= config.region_height_m);
        CHECK(v.position.z == config.antenna_height_m);
        const double speed = std::hypot(v.velocity.x, v.velocity.y);
        CHECK(speed >= config.speed_min_mps);
        CHECK(speed <= config.speed_max_mps);
    }
}

TEST_CASE("single vehicle has no V2V peer") {
    ScenarioConfig c;
    c.n_vehicles = 1;
    c.n_targets = 0;
    CHECK_THROWS_WITH_AS(build_grid_scenario(c, 1), "no V2V peer available", std::invalid_argument);
}

TEST_CASE("invalid config names the field") {
    ScenarioConfig c;
    c.n_targets = 13;
    try {
        build_grid_scenario(c, 1);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "n_targets");
    }
}

TEST_CASE("same seed gives bitwise-identical states") {
    const auto config = default_scenario();
    CHECK(build_grid_scenario(config, 5) == build_grid_scenario(config, 5));
    CHECK_FALSE(build_grid_scenario(config, 5) == build_grid_scenario(config, 6));
}

TEST_CASE("fewer links than vehicles pairs the first D") {
    auto c = default_scenario();
    c.n_v2v_links = 4;
    const auto s = build_grid_scenario(c, 9);
    const auto links = v2v_links(s);
    REQUIRE(links.size() == 4);
    for (int d = 0; d < 4; ++d) CHECK(links[d].tx == d);
    for (int v = 4; v < 12; ++v) CHECK_FALSE(s[v].v2v_peer.has_value());
}

TEST_CASE("straight-line kinematics") {
    const RoadGrid grid(default_scenario());
    Rng rng(1);
    VehicleState v;
    v.position = {0.0, 0.0, 1.5};
    v.velocity = {10.0, 0.0};
    const std::vector<VehicleState> in{v};
    const auto out = step_mobility(in, grid, 0.1, rng);
    CHECK(out[0].position.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out[0].position.y == 0.0);
    CHECK(out[0].position.z == 1.5);
}

TEST_CASE("zero time step leaves positions unchanged") {
    const auto config = default_scenario();
    const RoadGrid grid(config);
    const auto s = build_grid_scenario(config, 11);
    Rng rng(2);
    CHECK(step_mobility(s, grid, 0.0, rng) == s);
}

TEST_CASE("negative time step is rejected") {
    const auto config = default_scenario();
    const RoadGrid grid(config);
    const auto s = build_grid_scenario(config, 11);
    Rng rng(2);
    CHECK_THROWS_AS(step_mobility(s, grid, -1.0, rng), std::invalid_argument);
}

TEST_CASE("mobility is deterministic for a seed") {
    const auto config = default_scenario();
    const RoadGrid grid(config);
    auto run = [&](std::uint64_t seed) {
        auto s = build_grid_scenario(config, 3);
        Rng rng(seed);
        for (int i = 0; i < 100; ++i) s = step_mobility(s, grid, 0.1, rng);
        return s;
    };
    CHECK(run(17) == run(17));
}

TEST_CASE("long drives stay on lanes, in the region, at constant speed") {
    const auto config = default_scenario();
    const RoadGrid grid(config);
    auto s = build_grid_scenario(config, 21);
    std::vector<double> speeds;
    for (const auto& v : s) speeds.push_back(std::hypot(v.velocity.x, v.velocity.y));
    for (const auto& v : s) REQUIRE(on_some_lane(grid, v));
    Rng rng(8);
    for (int step = 0; step < 2000; ++step) {
        s = step_mobility(s, grid, 0.5, rng);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& v = s[i];
            REQUIRE(v.position.x >= 0.0);
            REQUIRE(v.position.x <= config.region_width_m);
            REQUIRE(v.position.y >= 0.0);
            REQUIRE(v.position.y <= config.region_height_m);
            REQUIRE(v.position.z == config.antenna_height_m);
            REQUIRE(std::hypot(v.velocity.x, v.velocity.y) == doctest::Approx(speeds[i]).epsilon(1e-12));
            REQUIRE(on_some_lane(grid, v));
        }
        REQUIRE(std::count_if(s.begin(), s.end(), [](const auto& v) { return v.is_target; }) == 2);
    }
}

TEST_CASE("lane layout keeps right") {
    const RoadGrid grid(default_scenario());
    const double c = grid.horizontal_roads().front();
    // Eastbound traffic sits below the centreline (smaller y), westbound above.
    CHECK(grid.lane_coordinate(c, 0, 1.0, 0.0) < c);
    CHECK(grid.lane_coordinate(c, 0, -1.0, 0.0) > c);
    CHECK(grid.lane_coordinate(c, 1, 1.0, 0.0) == doctest::Approx(c - 1.5 * grid.lane_width()));
    CHECK(grid.total_lane_length() == doctest::Approx(4.0 * 3.0 * (650.0 + 450.0)));
}
