#include "ccrsim/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ccrsim {

SlotGrid slot_grid_for(const ScenarioConfig& config) {
    return {config.region_width_m, config.region_height_m, config.slot_duration_s, config.episode_slots};
}

namespace {

std::string trim_line(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.pop_back();
    }
    return line;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line, const char* name) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw TrajectoryParseError(line, std::string("bad ") + name + " '" + text + "'");
    }
    return value;
}

}  // namespace

std::vector<TrajectoryRow> parse_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw TrajectoryParseError(0, "empty file");
    }
    line = trim_line(line);
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }
    if (line != kTrajectoryCsvHeader) {
        throw TrajectoryParseError(1, std::string("expected header '") + kTrajectoryCsvHeader + "'");
    }

    std::vector<TrajectoryRow> rows;
    std::set<int> finished;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim_line(line);
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (fields.size() != 4) {
            throw TrajectoryParseError(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        }
        TrajectoryRow row;
        row.vehicle_id = parse_field<int>(fields[0], line_no, "vehicle_id");
        row.timestamp_s = parse_field<double>(fields[1], line_no, "timestamp_s");
        row.x_m = parse_field<double>(fields[2], line_no, "x_m");
        row.y_m = parse_field<double>(fields[3], line_no, "y_m");
        if (!std::isfinite(row.timestamp_s) || !std::isfinite(row.x_m) || !std::isfinite(row.y_m)) {
            throw TrajectoryParseError(line_no, "non-finite value");
        }

        if (!rows.empty() && rows.back().vehicle_id == row.vehicle_id) {
            if (!(row.timestamp_s > rows.back().timestamp_s)) {
                throw TrajectoryParseError(line_no, "timestamps not increasing");
            }
        } else {
            if (!rows.empty()) finished.insert(rows.back().vehicle_id);
            if (finished.count(row.vehicle_id) != 0) {
                throw TrajectoryParseError(line_no, "rows not grouped by vehicle");
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw TrajectoryParseError(0, "empty file");
    }
    return rows;
}

TrajectorySet build_trajectory_set(const std::vector<TrajectoryRow>& rows, const SlotGrid& grid) {
    if (rows.empty()) {
        throw TrajectoryParseError(0, "empty file");
    }
    double xmin = rows.front().x_m, xmax = xmin, ymin = rows.front().y_m, ymax = ymin;
    for (const auto& r : rows) {
        xmin = std::min(xmin, r.x_m);
        xmax = std::max(xmax, r.x_m);
        ymin = std::min(ymin, r.y_m);
        ymax = std::max(ymax, r.y_m);
    }
    const auto map_x = [&](double x) {
        return xmax > xmin ? (x - xmin) / (xmax - xmin) * grid.width_m : 0.5 * grid.width_m;
    };
    const auto map_y = [&](double y) {
        return ymax > ymin ? (y - ymin) / (ymax - ymin) * grid.height_m : 0.5 * grid.height_m;
    };

    TrajectorySet set;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        std::vector<TimedPoint> src;
        while (j < rows.size() && rows[j].vehicle_id == rows[i].vehicle_id) {
            src.push_back({rows[j].timestamp_s, {map_x(rows[j].x_m), map_y(rows[j].y_m)}});
            ++j;
        }

        Trajectory traj;
        traj.vehicle_id = rows[i].vehicle_id;
        traj.start = src.front().p;
        for (std::size_t k = 1; k < src.size(); ++k) {
            traj.path_length_m += std::hypot(src[k].p.x - src[k - 1].p.x, src[k].p.y - src[k - 1].p.y);
        }

        const double t0 = src.front().t;
        std::size_t seg = 0;
        for (int k = 0; k < grid.samples; ++k) {
            const double t = t0 + k * grid.dt_s;
            while (seg + 1 < src.size() && src[seg + 1].t <= t) ++seg;
            Vec2 p;
            if (seg + 1 >= src.size()) {
                p = src.back().p;
            } else {
                const auto& a = src[seg];
                const auto& b = src[seg + 1];
                const double w = (t - a.t) / (b.t - a.t);
                p = {a.p.x + w * (b.p.x - a.p.x), a.p.y + w * (b.p.y - a.p.y)};
            }
            traj.samples.push_back({k * grid.dt_s, p});
        }
        set.trajectories.push_back(std::move(traj));
        i = j;
    }
    return set;
}

TrajectorySet load_trajectories(const std::string& path, const SlotGrid& grid) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trajectory file '" + path + "'");
    }
    try {
        return build_trajectory_set(parse_trajectory_csv(in), grid);
    } catch (const TrajectoryParseError& e) {
        throw TrajectoryParseError(e.line(), path + ": " + std::string(e.what()));
    }
}

TrajectorySet sample_trajectories(const TrajectorySet& set, SamplingStrategy strategy, std::size_t count,
                                  Rng& rng, double region_width_m, double region_height_m) {
    if (count > set.size()) {
        throw std::invalid_argument("requested " + std::to_string(count) + " trajectories but only " +
                                    std::to_string(set.size()) + " available");
    }
    const std::size_t n = set.size();
    std::vector<std::size_t> picked;
    picked.reserve(count);

    switch (strategy) {
        case SamplingStrategy::Random: {
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t j = i + rng.uniform_index(n - i);
                std::swap(idx[i], idx[j]);
                picked.push_back(idx[i]);
            }
            break;
        }
        case SamplingStrategy::AreaBalanced: {
            std::vector<std::vector<std::size_t>> cells(4);
            for (std::size_t i = 0; i < n; ++i) {
                const auto& s = set.trajectories[i].start;
                const int cx = s.x < 0.5 * region_width_m ? 0 : 1;
                const int cy = s.y < 0.5 * region_height_m ? 0 : 1;
                cells[cy * 2 + cx].push_back(i);
            }
            for (auto& cell : cells) {
                for (std::size_t i = 0; i + 1 < cell.size(); ++i) {
                    const std::size_t j = i + rng.uniform_index(cell.size() - i);
                    std::swap(cell[i], cell[j]);
                }
            }
            std::vector<std::size_t> cursor(4, 0);
            while (picked.size() < count) {
                for (std::size_t c = 0; c < 4 && picked.size() < count; ++c) {
                    if (cursor[c] < cells[c].size()) {
                        picked.push_back(cells[c][cursor[c]++]);
                    }
                }
            }
            break;
        }
        case SamplingStrategy::Longest: {
            std::vector<std::size_t> idx(n);
            for (std::size_t i = 0; i < n; ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                const auto& ta = set.trajectories[a];
                const auto& tb = set.trajectories[b];
                if (ta.path_length_m != tb.path_length_m) return ta.path_length_m > tb.path_length_m;
                return ta.vehicle_id < tb.vehicle_id;
            });
            picked.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count));
            break;
        }
    }

    TrajectorySet out;
    out.sampled_with = strategy;
    for (std::size_t i : picked) out.trajectories.push_back(set.trajectories[i]);
    return out;
}

std::vector<TrajectoryRow> generate_synthetic_trajectories(const ScenarioConfig& config, int vehicles,
                                                           std::uint64_t seed) {
    if (vehicles < 1) {
        throw std::invalid_argument("generate_synthetic_trajectories: vehicles must be >= 1");
    }
    ScenarioConfig c = config;
    c.n_vehicles = std::max(vehicles, 2);
    c.n_targets = 0;
    c.n_v2v_links.reset();
    c.mobility = MobilityMode::Grid;
    const RoadGrid grid(c);
    auto states = build_grid_scenario(c, seed);
    states.resize(static_cast<std::size_t>(vehicles));

    Rng rng(derive_seed(seed, streams::kTrajectory));
    constexpr double kHorizon = 300.0;
    std::vector<TrajectoryRow> rows;
    for (auto& v : states) {
        const int duration = 30 + rng.uniform_int(271);
        const int start = rng.uniform_int(static_cast<int>(kHorizon) - duration + 1);
        std::vector<VehicleState> one{v};
        for (int t = 0; t <= duration; ++t) {
            rows.push_back({v.id, static_cast<double>(start + t), one[0].position.x, one[0].position.y});
            one = step_mobility(one, grid, 1.0, rng);
        }
    }
    return rows;
}

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write trajectory file '" + path + "'");
    }
    out << kTrajectoryCsvHeader << '\n';
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.3f,%.6f,%.6f\n", r.vehicle_id, r.timestamp_s, r.x_m, r.y_m);
        out << buf;
    }
    if (!out) {
        throw std::runtime_error("failed writing trajectory file '" + path + "'");
    }
}

std::vector<VehicleState> trajectory_states(const TrajectorySet& set, int slot, double antenna_height_m) {
    std::vector<VehicleState> states;
    states.reserve(set.size());
    int id = 0;
    for (const auto& traj : set.trajectories) {
        const int last = static_cast<int>(traj.samples.size()) - 1;
        const int k = std::clamp(slot, 0, last);
        VehicleState v;
        v.id = id++;
        v.position = {traj.samples[k].p.x, traj.samples[k].p.y, antenna_height_m};
        if (k < last) {
            const double dt = traj.samples[k + 1].t - traj.samples[k].t;
            v.velocity = {(traj.samples[k + 1].p.x - traj.samples[k].p.x) / dt,
                          (traj.samples[k + 1].p.y - traj.samples[k].p.y) / dt};
        }
        states.push_back(v);
    }
    return states;
}

}  // namespace ccrsim
