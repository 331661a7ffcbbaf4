#include "ccrsim/harness/protocol.hpp"

#include "ccrsim/harness/config_io.hpp"

namespace ccrsim::harness {

using nlohmann::json;

namespace {

json error(const std::string& code, const std::string& message = {}) {
    json e{{"ok", false}, {"error", code}};
    if (!message.empty()) e["message"] = message;
    return e;
}

std::vector<int> int_array(const json& j, const char* field) {
    if (!j.is_array()) throw ActionError(std::string(field) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ActionError(std::string(field) + " must be an array of integers");
        out.push_back(x.get<int>());
    }
    return out;
}

Action parse_action(const json& request, const ScenarioConfig& config) {
    if (request.contains("raw_action")) {
        const json& raw = request["raw_action"];
        if (!raw.is_array()) throw ActionError("raw_action must be an array of numbers");
        std::vector<double> values;
        for (const auto& x : raw) {
            if (!x.is_number()) throw ActionError("raw_action must be an array of numbers");
            values.push_back(x.get<double>());
        }
        return decode_action(values, config);
    }
    if (request.contains("action")) {
        const json& a = request["action"];
        if (!a.is_object()) throw ActionError("action must be an object");
        Action action;
        action.channel = int_array(a.value("channel", json::array()), "channel");
        action.power_level = int_array(a.value("power", json::array()), "power");
        action.ris_phases = int_array(a.value("phases", json::array()), "phases");
        return action;
    }
    throw ActionError("step needs raw_action or action");
}

}  // namespace

json observation_to_json(const Observation& obs) {
    json vehicles = json::array();
    for (const auto& v : obs.vehicles) vehicles.push_back(v.features());
    json edges = json::array();
    for (const auto& e : obs.edges) edges.push_back(json::array({e.src, e.dst, to_string(e.type)}));
    return {{"slot", obs.slot},
            {"vehicles", std::move(vehicles)},
            {"bs", obs.bs.features()},
            {"ris", obs.ris.features()},
            {"edges", std::move(edges)}};
}

json step_info_to_json(const StepInfo& info) {
    return {{"slot", info.slot},
            {"psi_vehicles", info.psi_vehicle_count},
            {"psi_targets", info.psi_target_count},
            {"remaining_fraction", info.remaining_fraction},
            {"delivered", info.delivered},
            {"rate_v2i", info.metrics.rate_v2i},
            {"rate_v2v", info.metrics.rate_v2v}};
}

json episode_metrics_to_json(const EpisodeMetrics& m) {
    return {{"ccr_v2i", m.ccr_v2i},
            {"ccr_v2v", m.ccr_v2v},
            {"ccr_total", m.ccr_total},
            {"objective", m.objective},
            {"mean_reward", m.mean_reward}};
}

Session::Session(ScenarioConfig defaults) : defaults_(std::move(defaults)) {}

std::string Session::handle(const std::string& line) {
    json request;
    try {
        request = json::parse(line);
    } catch (const json::parse_error& e) {
        return error("parse_error", e.what()).dump();
    }
    return handle(request).dump();
}

json Session::handle(const json& request) {
    if (!request.is_object()) return error("parse_error", "request must be a JSON object");
    const auto cmd = request.find("cmd");
    if (cmd == request.end() || !cmd->is_string()) return error("unknown_cmd", "missing cmd");
    const std::string name = cmd->get<std::string>();
    try {
        if (name == "reset") return reset(request);
        if (name == "step") return step(request);
        if (name == "close") {
            closed_ = true;
            return {{"ok", true}, {"closed", true}};
        }
    } catch (const ConfigError& e) {
        return error("invalid_config", e.what());
    } catch (const ActionError& e) {
        return error("invalid_action", e.what());
    } catch (const EnvStateError& e) {
        return error(e.what());
    } catch (const json::exception& e) {
        return error("parse_error", e.what());
    } catch (const std::exception& e) {
        return error("invalid_config", e.what());
    }
    return error("unknown_cmd", "unknown cmd '" + name + "'");
}

json Session::reset(const json& request) {
    ScenarioConfig config = defaults_;
    if (request.contains("config")) config = config_from_json(request["config"], defaults_);
    std::uint64_t seed = config.seed;
    if (request.contains("seed")) {
        if (!request["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a nonnegative integer");
        seed = request["seed"].get<std::uint64_t>();
    }
    if (!env_) {
        env_.emplace(config);
    }
    const Observation obs = env_->reset(config, seed);
    return {{"ok", true}, {"obs", observation_to_json(obs)}};
}

json Session::step(const json& request) {
    if (!env_ || !env_->initialized()) throw EnvStateError("not_initialized");
    if (env_->done()) throw EnvStateError("episode_done");
    const Action action = parse_action(request, env_->config());
    const StepResult r = env_->step(action);
    json info = step_info_to_json(r.info);
    if (r.done) info["episode"] = episode_metrics_to_json(env_->episode_metrics());
    return {{"ok", true},
            {"obs", observation_to_json(r.observation)},
            {"reward", r.reward},
            {"done", r.done},
            {"info", std::move(info)}};
}

}  // namespace ccrsim::harness
