#include "ccrsim/config.hpp"

#include <algorithm>
#include <cmath>

namespace ccrsim {

double LargeScaleParams::exponent(LinkClass c) const {
    switch (c) {
        case LinkClass::V2I: return exponent_v2i;
        case LinkClass::V2V: return exponent_v2v;
        case LinkClass::Sense: return exponent_sense;
        case LinkClass::Ris: return exponent_ris;
    }
    return exponent_v2i;
}

double LargeScaleParams::shadow_sigma_db(LinkClass c) const {
    switch (c) {
        case LinkClass::V2I: return shadow_sigma_v2i_db;
        case LinkClass::V2V: return shadow_sigma_v2v_db;
        case LinkClass::Sense: return shadow_sigma_sense_db;
        case LinkClass::Ris: return shadow_sigma_ris_db;
    }
    return shadow_sigma_v2i_db;
}

std::string to_string(MobilityMode m) {
    return m == MobilityMode::Grid ? "grid" : "trajectory";
}

std::string to_string(SamplingStrategy s) {
    switch (s) {
        case SamplingStrategy::Random: return "random";
        case SamplingStrategy::AreaBalanced: return "area_balanced";
        case SamplingStrategy::Longest: return "longest";
    }
    return "random";
}

MobilityMode parse_mobility_mode(const std::string& s) {
    if (s == "grid") return MobilityMode::Grid;
    if (s == "trajectory") return MobilityMode::Trajectory;
    throw ConfigError("mobility", "expected grid|trajectory, got '" + s + "'");
}

SamplingStrategy parse_sampling_strategy(const std::string& s) {
    if (s == "random") return SamplingStrategy::Random;
    if (s == "area_balanced") return SamplingStrategy::AreaBalanced;
    if (s == "longest") return SamplingStrategy::Longest;
    throw ConfigError("trajectory_sampling", "expected random|area_balanced|longest, got '" + s + "'");
}

std::vector<double> ScenarioConfig::default_power_levels() {
    std::vector<double> levels;
    for (int dbm = 1; dbm <= 23; ++dbm) {
        levels.push_back(static_cast<double>(dbm));
    }
    return levels;
}

double ScenarioConfig::p_min_dbm() const {
    return *std::min_element(v2v_power_levels_dbm.begin(), v2v_power_levels_dbm.end());
}

double ScenarioConfig::p_max_dbm() const {
    return *std::max_element(v2v_power_levels_dbm.begin(), v2v_power_levels_dbm.end());
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) {
        throw ConfigError(field, what);
    }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const ScenarioConfig& c) {
    require(finite_positive(c.region_width_m), "region_width_m", "must be > 0");
    require(finite_positive(c.region_height_m), "region_height_m", "must be > 0");
    require(c.n_vehicles >= 1, "n_vehicles", "must be >= 1");
    require(c.n_targets >= 0 && c.n_targets <= c.n_vehicles, "n_targets", "must satisfy 0 <= J <= V");
    require(c.v2v_link_count() >= 1, "n_v2v_links", "must be >= 1");
    require(c.v2v_link_count() <= c.n_vehicles, "n_v2v_links",
            "must not exceed n_vehicles (one transmitter and one V2I channel per link)");
    require(c.speed_min_mps >= 0.0 && c.speed_min_mps <= c.speed_max_mps, "speed_range",
            "must satisfy 0 <= min <= max");
    require(finite_positive(c.slot_duration_s), "slot_duration", "must be > 0");
    require(c.window_slots >= 1, "window", "must be >= 1");
    require(c.episode_slots >= c.window_slots, "episode_slots", "must be >= window");
    require(finite_positive(c.payload_bits), "payload", "must be > 0");
    require(!c.v2v_power_levels_dbm.empty(), "v2v_power_levels", "must not be empty");
    for (double p : c.v2v_power_levels_dbm) {
        require(std::isfinite(p), "v2v_power_levels", "levels must be finite");
    }
    require(std::is_sorted(c.v2v_power_levels_dbm.begin(), c.v2v_power_levels_dbm.end()),
            "v2v_power_levels", "levels must be ascending");
    require(std::isfinite(c.v2i_power_dbm), "v2i_power", "must be finite");
    require(std::isfinite(c.sensing_power_dbm), "sensing_power", "must be finite");
    require(std::isfinite(c.rate_threshold_bps_hz) && c.rate_threshold_bps_hz >= 0.0, "rate_threshold",
            "must be >= 0");
    require(std::isfinite(c.snr_threshold_db), "snr_threshold", "must be finite");
    require(std::isfinite(c.noise_comm_dbm), "noise_comm", "must be finite");
    require(std::isfinite(c.noise_sense_dbm), "noise_sense", "must be finite");
    require(finite_positive(c.bandwidth_hz), "bandwidth", "must be > 0");
    require(c.ris_elements >= 1, "ris_elements", "must be >= 1");
    require(c.phase_levels >= 2, "phase_levels", "must be >= 2");

    const auto& ch = c.channel;
    require(finite_positive(ch.pathloss_const), "pathloss_const", "must be > 0");
    for (double e : {ch.exponent_v2i, ch.exponent_v2v, ch.exponent_sense, ch.exponent_ris}) {
        require(finite_positive(e), "pathloss_exponent", "exponents must be > 0");
    }
    for (double s : {ch.shadow_sigma_v2i_db, ch.shadow_sigma_v2v_db, ch.shadow_sigma_sense_db,
                     ch.shadow_sigma_ris_db}) {
        require(std::isfinite(s) && s >= 0.0, "shadow_sigma_db", "must be >= 0");
    }
    require(finite_positive(ch.wavelength_m), "wavelength_m", "must be > 0");
    require(finite_positive(ch.element_spacing_m), "element_spacing_m", "must be > 0");
    require(c.ris_amplitude >= 0.0 && c.ris_amplitude <= 1.0, "ris_amplitude", "must lie in [0, 1]");
    require(finite_positive(c.min_link_distance_m), "min_link_distance_m", "must be > 0");

    require(c.roads_per_direction >= 1, "roads_per_direction", "must be >= 1");
    require(finite_positive(c.lane_width_m), "lane_width_m", "must be > 0");
    require(std::isfinite(c.antenna_height_m), "antenna_height_m", "must be finite");
    require(c.straight_probability >= 0.0 && c.straight_probability <= 1.0, "straight_probability",
            "must lie in [0, 1]");
    require(c.trajectory_pool_size >= c.n_vehicles || c.mobility != MobilityMode::Trajectory ||
                !c.trajectory_file.empty(),
            "trajectory_pool_size", "synthetic pool must hold at least n_vehicles trajectories");
}

}  // namespace ccrsim
