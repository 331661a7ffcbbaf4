#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccrsim/config.hpp"
#include "ccrsim/geometry.hpp"
#include "ccrsim/rng.hpp"
#include "ccrsim/scenario.hpp"

namespace ccrsim {

/// CSV header every trajectory file must start with.
inline constexpr const char* kTrajectoryCsvHeader = "vehicle_id,timestamp_s,x_m,y_m";

class TrajectoryParseError : public std::runtime_error {
public:
    TrajectoryParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct TimedPoint {
    double t = 0.0;
    Vec2 p;
};

struct Trajectory {
    int vehicle_id = 0;
    /// Positions on the slot grid (first sample at the trajectory start).
    std::vector<TimedPoint> samples;
    /// Length of the rescaled source polyline.
    double path_length_m = 0.0;
    /// Rescaled position of the first source point.
    Vec2 start;
};

struct TrajectorySet {
    std::vector<Trajectory> trajectories;
    std::optional<SamplingStrategy> sampled_with;

    std::size_t size() const { return trajectories.size(); }
};

/// Target frame for loading: region rectangle and slot grid.
struct SlotGrid {
    double width_m = 650.0;
    double height_m = 450.0;
    double dt_s = 1e-3;
    int samples = 100;
};

SlotGrid slot_grid_for(const ScenarioConfig& config);

/// One raw CSV row.
struct TrajectoryRow {
    int vehicle_id = 0;
    double timestamp_s = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;
};

std::vector<TrajectoryRow> parse_trajectory_csv(std::istream& in);

/// Affinely maps the bounding box of all rows onto the region, then resamples
/// each trajectory onto the slot grid by linear interpolation (holding the last
/// position past the final timestamp).
TrajectorySet build_trajectory_set(const std::vector<TrajectoryRow>& rows, const SlotGrid& grid);

TrajectorySet load_trajectories(const std::string& path, const SlotGrid& grid);

/// random: uniform without replacement. area_balanced: round-robin over the
/// 2x2 cells of the region keyed by start point, random order inside a cell.
/// longest: descending source path length, ties by vehicle id.
TrajectorySet sample_trajectories(const TrajectorySet& set, SamplingStrategy strategy, std::size_t count,
                                  Rng& rng, double region_width_m = 650.0, double region_height_m = 450.0);

/// Synthetic grid-mobility traces at 1 s resolution with random durations
/// between 30 s and 300 s; a stand-in for recorded urban trajectories.
std::vector<TrajectoryRow> generate_synthetic_trajectories(const ScenarioConfig& config, int vehicles,
                                                           std::uint64_t seed);

void write_trajectory_csv(const std::string& path, const std::vector<TrajectoryRow>& rows);

/// Vehicle states for playback slot `slot` of the given trajectories.
std::vector<VehicleState> trajectory_states(const TrajectorySet& set, int slot, double antenna_height_m);

}  // namespace ccrsim
