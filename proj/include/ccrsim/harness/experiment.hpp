#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccrsim/config.hpp"
#include "ccrsim/connectivity.hpp"
#include "ccrsim/policies.hpp"

namespace ccrsim::harness {

enum class SweepVar { None, PayloadK, V2iPower, WindowN, NVehicles, TrajectoryScenario };

std::string to_string(SweepVar v);
SweepVar parse_sweep_var(const std::string& s);

/// Payload sweep values are in units of this many bits.
inline constexpr double kPayloadUnitBits = 1060.0;

struct ExperimentSpec {
    ScenarioConfig base;
    SweepVar sweep = SweepVar::None;
    std::vector<std::string> values;  // one entry "" when sweep is None
    int runs = 50;
    PolicySpec policy;
    std::uint64_t base_seed = 12345;
};

/// Parses "var=v1,v2,...". Throws ConfigError("sweep") on bad input.
void parse_sweep(const std::string& text, ExperimentSpec& spec);

/// `base` with one sweep value applied. trajectory_scenario accepts
/// 1|2|3 or random|area_balanced|longest and switches to trajectory mobility.
ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepVar var, const std::string& value);

/// Seed of run `run` at every sweep point: base_seed + run, so all points
/// share their random numbers run for run.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t sweep_index, int run);

EpisodeMetrics run_episode(const ScenarioConfig& config, const PolicySpec& policy, std::uint64_t seed);

struct PointReport {
    SweepVar var = SweepVar::None;
    std::string value;
    CCRReport report;
};

using Progress = std::function<void(std::size_t point, int run)>;

std::vector<PointReport> run_eval(const ExperimentSpec& spec, const Progress& progress = {});

}  // namespace ccrsim::harness
