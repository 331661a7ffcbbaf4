#include "ccrsim/harness/experiment.hpp"

#include <charconv>
#include <sstream>

#include "ccrsim/env.hpp"

namespace ccrsim::harness {

std::string to_string(SweepVar v) {
    switch (v) {
        case SweepVar::None: return "none";
        case SweepVar::PayloadK: return "payload_K";
        case SweepVar::V2iPower: return "v2i_power";
        case SweepVar::WindowN: return "window_N";
        case SweepVar::NVehicles: return "n_vehicles";
        case SweepVar::TrajectoryScenario: return "trajectory_scenario";
    }
    return "none";
}

SweepVar parse_sweep_var(const std::string& s) {
    for (auto v : {SweepVar::None, SweepVar::PayloadK, SweepVar::V2iPower, SweepVar::WindowN, SweepVar::NVehicles,
                   SweepVar::TrajectoryScenario}) {
        if (to_string(v) == s) return v;
    }
    throw ConfigError("sweep", "unknown sweep variable '" + s +
                                   "' (payload_K, v2i_power, window_N, n_vehicles, trajectory_scenario)");
}

void parse_sweep(const std::string& text, ExperimentSpec& spec) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep", "expected var=v1,v2,...");
    spec.sweep = parse_sweep_var(text.substr(0, eq));
    spec.values.clear();
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) spec.values.push_back(item);
    }
    if (spec.values.empty()) throw ConfigError("sweep", "no sweep values");
}

namespace {

double number(const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("sweep", "not a number: '" + s + "'");
    return x;
}

int integer(const std::string& s) {
    int x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("sweep", "not an integer: '" + s + "'");
    return x;
}

}  // namespace

ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepVar var, const std::string& value) {
    ScenarioConfig c = base;
    switch (var) {
        case SweepVar::None: break;
        case SweepVar::PayloadK: c.payload_bits = number(value) * kPayloadUnitBits; break;
        case SweepVar::V2iPower: c.v2i_power_dbm = number(value); break;
        case SweepVar::WindowN: c.window_slots = integer(value); break;
        case SweepVar::NVehicles:
            c.n_vehicles = integer(value);
            c.n_targets = std::min(c.n_targets, c.n_vehicles);
            if (c.n_v2v_links) c.n_v2v_links = std::min(*c.n_v2v_links, c.n_vehicles);
            break;
        case SweepVar::TrajectoryScenario:
            c.mobility = MobilityMode::Trajectory;
            if (value == "1") c.trajectory_sampling = SamplingStrategy::Random;
            else if (value == "2") c.trajectory_sampling = SamplingStrategy::AreaBalanced;
            else if (value == "3") c.trajectory_sampling = SamplingStrategy::Longest;
            else c.trajectory_sampling = parse_sampling_strategy(value);
            break;
    }
    validate(c);
    return c;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t /*sweep_index*/, int run) {
    return base_seed + static_cast<std::uint64_t>(run);
}

EpisodeMetrics run_episode(const ScenarioConfig& config, const PolicySpec& policy, std::uint64_t seed) {
    Env env(config);
    env.reset(seed);
    Policy agent(policy, seed);
    while (!env.done()) env.step(agent.act(env));
    return env.episode_metrics();
}

std::vector<PointReport> run_eval(const ExperimentSpec& spec, const Progress& progress) {
    if (spec.runs < 1) throw ConfigError("runs", "must be at least 1");
    std::vector<std::string> values = spec.values;
    if (spec.sweep == SweepVar::None) {
        values.assign(1, "");
    } else if (values.empty()) {
        throw ConfigError("sweep", "no sweep values");
    }
    if (spec.policy.greedy.phase_budget < 1) throw ConfigError("greedy_phase_budget", "must be at least 1");

    std::vector<PointReport> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const ScenarioConfig config = apply_sweep(spec.base, spec.sweep, values[i]);
        PointReport point{spec.sweep, values[i], {}};
        for (int run = 0; run < spec.runs; ++run) {
            if (progress) progress(i, run);
            point.report.add(run_episode(config, spec.policy, run_seed(spec.base_seed, i, run)));
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace ccrsim::harness
