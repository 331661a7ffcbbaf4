#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccrsim/config.hpp"
#include "ccrsim/geometry.hpp"
#include "ccrsim/rng.hpp"

namespace ccrsim {

struct VehicleState {
    int id = 0;
    Vec3 position;
    Vec2 velocity;
    bool is_target = false;
    /// Receiver of the V2V link this vehicle transmits on, if any.
    std::optional<int> v2v_peer;

    friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

struct V2VLink {
    int tx = 0;
    int rx = 0;

    friend bool operator==(const V2VLink&, const V2VLink&) = default;
};

/// Links in transmitter-id order; link index d is the position in this list.
std::vector<V2VLink> v2v_links(std::span<const VehicleState> states);

/// Manhattan road layout: `roads_per_direction` horizontal and vertical roads
/// spread evenly across the region, each with two lanes per travel direction.
/// Traffic keeps right; lane k sits (k + 0.5) lane widths from the centreline.
class RoadGrid {
public:
    explicit RoadGrid(const ScenarioConfig& config);

    double width() const { return width_; }
    double height() const { return height_; }
    double lane_width() const { return lane_width_; }
    double straight_probability() const { return straight_probability_; }

    /// Centrelines of roads running along y (constant x).
    const std::vector<double>& vertical_roads() const { return vertical_; }
    /// Centrelines of roads running along x (constant y).
    const std::vector<double>& horizontal_roads() const { return horizontal_; }

    /// Cross-axis coordinate of lane `lane` on the road centred at `centre`
    /// for travel direction (dx, dy) (unit, axis-aligned).
    double lane_coordinate(double centre, int lane, double dx, double dy) const;

    /// Total lane length, used for uniform placement.
    double total_lane_length() const;

private:
    double width_;
    double height_;
    double lane_width_;
    double straight_probability_;
    std::vector<double> vertical_;
    std::vector<double> horizontal_;
};

/// Places V vehicles uniformly (by length) over all lanes, draws constant
/// speeds from the configured range, flags J random targets and pairs the
/// first D vehicles with their nearest neighbours.
std::vector<VehicleState> build_grid_scenario(const ScenarioConfig& config, std::uint64_t rng_seed);

/// Flags J distinct vehicles as targets and assigns nearest-neighbour V2V
/// peers to vehicles 0..D-1. Throws if a peer is needed but V == 1.
void assign_roles(std::vector<VehicleState>& states, const ScenarioConfig& config, Rng& rng);

/// Advances every vehicle by velocity * dt. Direction changes only when a
/// vehicle crosses a perpendicular road centreline (straight with the grid's
/// straight probability, otherwise left or right with equal odds) or reaches
/// the region boundary (U-turn onto the opposite carriageway). Z is unchanged.
std::vector<VehicleState> step_mobility(std::span<const VehicleState> states, const RoadGrid& grid,
                                        double dt, Rng& rng);

}  // namespace ccrsim
