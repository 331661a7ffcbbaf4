#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "ccrsim/env.hpp"

namespace ccrsim::harness {

/// Flat node-feature arrays plus an edge list of [src, dst, type].
nlohmann::json observation_to_json(const Observation& obs);

nlohmann::json step_info_to_json(const StepInfo& info);

nlohmann::json episode_metrics_to_json(const EpisodeMetrics& m);

/// One environment behind the newline-delimited JSON protocol. Each request
/// line yields exactly one response line; errors never end the session.
///
///   {"cmd":"reset","config":{...},"seed":7}  -> {"ok":true,"obs":{...}}
///   {"cmd":"step","raw_action":[...]}        -> {"ok":true,"obs":..,"reward":..,"done":..,"info":..}
///   {"cmd":"step","action":{"channel":[..],"power":[..],"phases":[..]}}
///   {"cmd":"close"}                          -> {"ok":true,"closed":true}
///
/// Error codes: parse_error, unknown_cmd, not_initialized, episode_done,
/// invalid_action, invalid_config.
class Session {
public:
    explicit Session(ScenarioConfig defaults = {});

    std::string handle(const std::string& line);
    nlohmann::json handle(const nlohmann::json& request);

    bool closed() const { return closed_; }
    const std::optional<Env>& env() const { return env_; }

private:
    nlohmann::json reset(const nlohmann::json& request);
    nlohmann::json step(const nlohmann::json& request);

    ScenarioConfig defaults_;
    std::optional<Env> env_;
    bool closed_ = false;
};

}  // namespace ccrsim::harness
