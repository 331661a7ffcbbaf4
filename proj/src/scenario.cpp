#include "ccrsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccrsim {

std::vector<V2VLink> v2v_links(std::span<const VehicleState> states) {
    std::vector<V2VLink> links;
    for (const auto& s : states) {
        if (s.v2v_peer) {
            links.push_back({s.id, *s.v2v_peer});
        }
    }
    return links;
}

RoadGrid::RoadGrid(const ScenarioConfig& config)
    : width_(config.region_width_m),
      height_(config.region_height_m),
      lane_width_(config.lane_width_m),
      straight_probability_(config.straight_probability) {
    const int roads = config.roads_per_direction;
    for (int i = 1; i <= roads; ++i) {
        vertical_.push_back(width_ * i / (roads + 1));
        horizontal_.push_back(height_ * i / (roads + 1));
    }
}

double RoadGrid::lane_coordinate(double centre, int lane, double dx, double dy) const {
    const double offset = lane_width_ * (lane + 0.5);
    if (dx > 0.0) return centre - offset;
    if (dx < 0.0) return centre + offset;
    if (dy > 0.0) return centre + offset;
    return centre - offset;
}

double RoadGrid::total_lane_length() const {
    // Two directions, two lanes each.
    return 4.0 * (static_cast<double>(horizontal_.size()) * width_ +
                  static_cast<double>(vertical_.size()) * height_);
}

namespace {

double nearest(const std::vector<double>& centres, double v) {
    double best = centres.front();
    for (double c : centres) {
        if (std::abs(c - v) < std::abs(best - v)) {
            best = c;
        }
    }
    return best;
}

int lane_of(const RoadGrid& grid, double centre, double cross) {
    return std::abs(cross - centre) > grid.lane_width() ? 1 : 0;
}

struct LaneRef {
    bool along_x;
    double centre;
    double dx, dy;
    int lane;
};

std::vector<LaneRef> enumerate_lanes(const RoadGrid& grid) {
    std::vector<LaneRef> lanes;
    for (double c : grid.horizontal_roads()) {
        for (double dir : {1.0, -1.0}) {
            for (int lane = 0; lane < 2; ++lane) lanes.push_back({true, c, dir, 0.0, lane});
        }
    }
    for (double c : grid.vertical_roads()) {
        for (double dir : {1.0, -1.0}) {
            for (int lane = 0; lane < 2; ++lane) lanes.push_back({false, c, 0.0, dir, lane});
        }
    }
    return lanes;
}

VehicleState place_vehicle(const RoadGrid& grid, const ScenarioConfig& config, int id, Rng& rng) {
    double s = rng.uniform() * grid.total_lane_length();
    const double speed = rng.uniform(config.speed_min_mps, config.speed_max_mps);

    const auto lanes = enumerate_lanes(grid);
    std::size_t k = 0;
    for (; k + 1 < lanes.size(); ++k) {
        const double len = lanes[k].along_x ? grid.width() : grid.height();
        if (s < len) break;
        s -= len;
    }
    const LaneRef& l = lanes[k];
    VehicleState v;
    v.id = id;
    v.position.z = config.antenna_height_m;
    const double cross = grid.lane_coordinate(l.centre, l.lane, l.dx, l.dy);
    if (l.along_x) {
        v.position.x = std::min(s, grid.width());
        v.position.y = cross;
    } else {
        v.position.x = cross;
        v.position.y = std::min(s, grid.height());
    }
    v.velocity = {l.dx * speed, l.dy * speed};
    return v;
}

struct Motion {
    double x, y;
    double dx, dy;  // unit direction
};

// Moves one vehicle `dist` metres along the grid, applying turn and
// boundary rules at every event encountered on the way.
void advance(Motion& m, double dist, const RoadGrid& grid, Rng& rng) {
    constexpr int kMaxEvents = 100000;
    for (int guard = 0; guard < kMaxEvents && dist > 0.0; ++guard) {
        const bool along_x = m.dx != 0.0;
        const double s = along_x ? m.dx : m.dy;
        double& p = along_x ? m.x : m.y;
        const double q = along_x ? m.y : m.x;
        const double bound = s > 0.0 ? (along_x ? grid.width() : grid.height()) : 0.0;
        const auto& crossings = along_x ? grid.vertical_roads() : grid.horizontal_roads();
        const auto& parallel = along_x ? grid.horizontal_roads() : grid.vertical_roads();
        const double road_centre = nearest(parallel, q);
        const int lane = lane_of(grid, road_centre, q);

        const double to_bound = s * (bound - p);
        if (to_bound <= 0.0) {
            // U-turn onto the opposite carriageway, same lane index.
            p = bound;
            m.dx = -m.dx;
            m.dy = -m.dy;
            (along_x ? m.y : m.x) = grid.lane_coordinate(road_centre, lane, m.dx, m.dy);
            continue;
        }

        double to_cross = std::numeric_limits<double>::infinity();
        double cross_at = 0.0;
        for (double c : crossings) {
            const double ahead = s * (c - p);
            if (ahead > 0.0 && ahead < to_cross) {
                to_cross = ahead;
                cross_at = c;
            }
        }

        const double next = std::min(to_bound, to_cross);
        if (dist < next) {
            p += s * dist;
            return;
        }
        dist -= next;
        if (to_bound <= to_cross) {
            p = bound;
            continue;  // handled as a U-turn on the next pass
        }

        p = cross_at;
        const double u = rng.uniform();
        if (u < grid.straight_probability()) {
            continue;
        }
        const bool left = u < grid.straight_probability() + 0.5 * (1.0 - grid.straight_probability());
        const double ndx = left ? -m.dy : m.dy;
        const double ndy = left ? m.dx : -m.dx;
        m.dx = ndx;
        m.dy = ndy;
        // Enter the crossing road on the same lane index, level with the
        // centreline of the road being left.
        if (along_x) {
            m.x = grid.lane_coordinate(cross_at, lane, m.dx, m.dy);
            m.y = road_centre;
        } else {
            m.y = grid.lane_coordinate(cross_at, lane, m.dx, m.dy);
            m.x = road_centre;
        }
    }
}

}  // namespace

void assign_roles(std::vector<VehicleState>& states, const ScenarioConfig& config, Rng& rng) {
    const int n = static_cast<int>(states.size());
    const int links = config.v2v_link_count();
    if (links > 0 && n < 2) {
        throw std::invalid_argument("no V2V peer available");
    }
    if (config.n_targets > n) {
        throw ConfigError("n_targets", "exceeds vehicle count");
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = 0; i < config.n_targets; ++i) {
        const int j = i + rng.uniform_int(n - i);
        std::swap(order[i], order[j]);
    }
    for (auto& s : states) {
        s.is_target = false;
        s.v2v_peer.reset();
    }
    for (int i = 0; i < config.n_targets; ++i) {
        states[order[i]].is_target = true;
    }

    for (int v = 0; v < links; ++v) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int u = 0; u < n; ++u) {
            if (u == v) continue;
            const double d = planar_distance(states[v].position, states[u].position);
            if (d < best_d) {
                best_d = d;
                best = u;
            }
        }
        states[v].v2v_peer = best;
    }
}

std::vector<VehicleState> build_grid_scenario(const ScenarioConfig& config, std::uint64_t rng_seed) {
    validate(config);
    if (config.n_vehicles < 2) {
        throw std::invalid_argument("no V2V peer available");
    }
    const RoadGrid grid(config);
    Rng rng(derive_seed(rng_seed, streams::kScenario));

    std::vector<VehicleState> states;
    states.reserve(config.n_vehicles);
    for (int i = 0; i < config.n_vehicles; ++i) {
        states.push_back(place_vehicle(grid, config, i, rng));
    }
    assign_roles(states, config, rng);
    return states;
}

std::vector<VehicleState> step_mobility(std::span<const VehicleState> states, const RoadGrid& grid,
                                        double dt, Rng& rng) {
    if (dt < 0.0) {
        throw std::invalid_argument("step_mobility: dt must be >= 0");
    }
    std::vector<VehicleState> out(states.begin(), states.end());
    for (auto& v : out) {
        const double speed = std::hypot(v.velocity.x, v.velocity.y);
        if (speed == 0.0 || dt == 0.0) {
            continue;
        }
        Motion m{v.position.x, v.position.y, 0.0, 0.0};
        if (std::abs(v.velocity.x) >= std::abs(v.velocity.y)) {
            m.dx = v.velocity.x > 0.0 ? 1.0 : -1.0;
        } else {
            m.dy = v.velocity.y > 0.0 ? 1.0 : -1.0;
        }
        advance(m, speed * dt, grid, rng);
        v.position.x = std::clamp(m.x, 0.0, grid.width());
        v.position.y = std::clamp(m.y, 0.0, grid.height());
        v.velocity = {m.dx * speed, m.dy * speed};
    }
    return out;
}

}  // namespace ccrsim
