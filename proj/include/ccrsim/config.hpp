#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccrsim/geometry.hpp"

namespace ccrsim {

/// Raised for any invalid scenario parameter; field() names the offender.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Propagation class of a link, selected by its endpoint types.
enum class LinkClass { V2I, V2V, Sense, Ris };

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Large-scale propagation constants shared by every link class.
struct LargeScaleParams {
    double pathloss_const = 1e-3;  // linear power gain at 1 m
    double exponent_v2i = 3.0;
    double exponent_v2v = 3.68;
    double exponent_sense = 3.0;
    double exponent_ris = 2.2;
    double shadow_sigma_v2i_db = 8.0;
    double shadow_sigma_v2v_db = 3.0;
    double shadow_sigma_sense_db = 8.0;
    double shadow_sigma_ris_db = 3.0;
    double wavelength_m = kSpeedOfLight / 2e9;
    double element_spacing_m = kSpeedOfLight / 2e9 / 2.0;

    double exponent(LinkClass c) const;
    double shadow_sigma_db(LinkClass c) const;
};

enum class MobilityMode { Grid, Trajectory };

enum class SamplingStrategy { Random, AreaBalanced, Longest };

std::string to_string(MobilityMode m);
std::string to_string(SamplingStrategy s);
MobilityMode parse_mobility_mode(const std::string& s);
SamplingStrategy parse_sampling_strategy(const std::string& s);

struct ScenarioConfig {
    double region_width_m = 650.0;
    double region_height_m = 450.0;
    int n_vehicles = 12;
    int n_targets = 2;
    /// Number of V2V links; unset means one link per vehicle.
    std::optional<int> n_v2v_links;
    Vec3 bs_position{180.0, 270.0, 25.0};
    Vec3 ris_position{290.0, 380.0, 25.0};
    double speed_min_mps = 10.0;
    double speed_max_mps = 15.0;
    double slot_duration_s = 1e-3;
    int episode_slots = 100;
    double payload_bits = 8.0 * 1060.0;
    int window_slots = 4;
    double v2i_power_dbm = 23.0;
    double sensing_power_dbm = 23.0;
    std::vector<double> v2v_power_levels_dbm = default_power_levels();
    double rate_threshold_bps_hz = 3.0;
    double snr_threshold_db = 10.0;
    double noise_comm_dbm = -114.0;
    double noise_sense_dbm = -114.0;
    double bandwidth_hz = 1e6;
    int ris_elements = 12;
    int phase_levels = 8;
    std::uint64_t seed = 12345;

    LargeScaleParams channel;
    double ris_amplitude = 1.0;
    /// When false the reflected path is dropped entirely (no-RIS reference).
    bool ris_enabled = true;
    /// Distances below this are evaluated at this value (path-loss reference).
    double min_link_distance_m = 1.0;

    int roads_per_direction = 3;
    double lane_width_m = 4.0;
    double antenna_height_m = 1.5;
    double straight_probability = 0.5;

    MobilityMode mobility = MobilityMode::Grid;
    std::string trajectory_file;
    SamplingStrategy trajectory_sampling = SamplingStrategy::Random;
    int trajectory_pool_size = 50;

    int v2v_link_count() const { return n_v2v_links.value_or(n_vehicles); }
    double p_min_dbm() const;
    double p_max_dbm() const;

    static std::vector<double> default_power_levels();
};

/// Throws ConfigError naming the first field that breaks an invariant.
void validate(const ScenarioConfig& config);

}  // namespace ccrsim
