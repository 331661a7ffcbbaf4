#include "ccrsim/harness/config_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace ccrsim::harness {

using nlohmann::json;

namespace {

double as_double(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
    return x;
}

int as_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    return v.get<int>();
}

bool as_bool(const json& v, const std::string& field) {
    if (!v.is_boolean()) throw ConfigError(field, "expected true or false");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
    return v.get<std::string>();
}

std::vector<double> as_doubles(const json& v, const std::string& field, std::size_t exact = 0) {
    if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
    if (exact != 0 && v.size() != exact) {
        throw ConfigError(field, "expected " + std::to_string(exact) + " entries");
    }
    std::vector<double> out;
    for (const auto& x : v) out.push_back(as_double(x, field));
    return out;
}

Vec3 as_vec3(const json& v, const std::string& field) {
    const auto xs = as_doubles(v, field, 3);
    return {xs[0], xs[1], xs[2]};
}

using Setter = std::function<void(ScenarioConfig&, const json&, const std::string&)>;

void per_class(const json& v, const std::string& field, double& v2i, double& v2v, double& sense, double& ris) {
    if (!v.is_object()) throw ConfigError(field, "expected an object keyed by v2i, v2v, sense, ris");
    for (const auto& [k, x] : v.items()) {
        const std::string name = field + "." + k;
        if (k == "v2i") v2i = as_double(x, name);
        else if (k == "v2v") v2v = as_double(x, name);
        else if (k == "sense") sense = as_double(x, name);
        else if (k == "ris") ris = as_double(x, name);
        else throw ConfigError(name, "unknown link class");
    }
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"region_width_m", [](auto& c, auto& v, auto& f) { c.region_width_m = as_double(v, f); }},
        {"region_height_m", [](auto& c, auto& v, auto& f) { c.region_height_m = as_double(v, f); }},
        {"n_vehicles", [](auto& c, auto& v, auto& f) { c.n_vehicles = as_int(v, f); }},
        {"n_targets", [](auto& c, auto& v, auto& f) { c.n_targets = as_int(v, f); }},
        {"n_v2v_links",
         [](auto& c, auto& v, auto& f) {
             if (v.is_null()) c.n_v2v_links.reset();
             else c.n_v2v_links = as_int(v, f);
         }},
        {"bs_position", [](auto& c, auto& v, auto& f) { c.bs_position = as_vec3(v, f); }},
        {"ris_position", [](auto& c, auto& v, auto& f) { c.ris_position = as_vec3(v, f); }},
        {"speed_range",
         [](auto& c, auto& v, auto& f) {
             const auto r = as_doubles(v, f, 2);
             c.speed_min_mps = r[0];
             c.speed_max_mps = r[1];
         }},
        {"slot_duration", [](auto& c, auto& v, auto& f) { c.slot_duration_s = as_double(v, f); }},
        {"episode_slots", [](auto& c, auto& v, auto& f) { c.episode_slots = as_int(v, f); }},
        {"payload", [](auto& c, auto& v, auto& f) { c.payload_bits = as_double(v, f); }},
        {"window", [](auto& c, auto& v, auto& f) { c.window_slots = as_int(v, f); }},
        {"v2i_power", [](auto& c, auto& v, auto& f) { c.v2i_power_dbm = as_double(v, f); }},
        {"sensing_power", [](auto& c, auto& v, auto& f) { c.sensing_power_dbm = as_double(v, f); }},
        {"v2v_power_levels", [](auto& c, auto& v, auto& f) { c.v2v_power_levels_dbm = as_doubles(v, f); }},
        {"rate_threshold", [](auto& c, auto& v, auto& f) { c.rate_threshold_bps_hz = as_double(v, f); }},
        {"snr_threshold", [](auto& c, auto& v, auto& f) { c.snr_threshold_db = as_double(v, f); }},
        {"noise_comm", [](auto& c, auto& v, auto& f) { c.noise_comm_dbm = as_double(v, f); }},
        {"noise_sense", [](auto& c, auto& v, auto& f) { c.noise_sense_dbm = as_double(v, f); }},
        {"bandwidth", [](auto& c, auto& v, auto& f) { c.bandwidth_hz = as_double(v, f); }},
        {"ris_elements", [](auto& c, auto& v, auto& f) { c.ris_elements = as_int(v, f); }},
        {"phase_levels", [](auto& c, auto& v, auto& f) { c.phase_levels = as_int(v, f); }},
        {"seed",
         [](auto& c, auto& v, auto& f) {
             if (!v.is_number_unsigned()) throw ConfigError(f, "expected a nonnegative integer");
             c.seed = v.template get<std::uint64_t>();
         }},
        {"pathloss_const", [](auto& c, auto& v, auto& f) { c.channel.pathloss_const = as_double(v, f); }},
        {"pathloss_exponent",
         [](auto& c, auto& v, auto& f) {
             auto& ch = c.channel;
             per_class(v, f, ch.exponent_v2i, ch.exponent_v2v, ch.exponent_sense, ch.exponent_ris);
         }},
        {"shadow_sigma_db",
         [](auto& c, auto& v, auto& f) {
             auto& ch = c.channel;
             per_class(v, f, ch.shadow_sigma_v2i_db, ch.shadow_sigma_v2v_db, ch.shadow_sigma_sense_db,
                       ch.shadow_sigma_ris_db);
         }},
        {"wavelength_m", [](auto& c, auto& v, auto& f) { c.channel.wavelength_m = as_double(v, f); }},
        {"element_spacing_m", [](auto& c, auto& v, auto& f) { c.channel.element_spacing_m = as_double(v, f); }},
        {"ris_amplitude", [](auto& c, auto& v, auto& f) { c.ris_amplitude = as_double(v, f); }},
        {"ris_enabled", [](auto& c, auto& v, auto& f) { c.ris_enabled = as_bool(v, f); }},
        {"min_link_distance_m", [](auto& c, auto& v, auto& f) { c.min_link_distance_m = as_double(v, f); }},
        {"roads_per_direction", [](auto& c, auto& v, auto& f) { c.roads_per_direction = as_int(v, f); }},
        {"lane_width_m", [](auto& c, auto& v, auto& f) { c.lane_width_m = as_double(v, f); }},
        {"antenna_height_m", [](auto& c, auto& v, auto& f) { c.antenna_height_m = as_double(v, f); }},
        {"straight_probability", [](auto& c, auto& v, auto& f) { c.straight_probability = as_double(v, f); }},
        {"mobility", [](auto& c, auto& v, auto& f) { c.mobility = parse_mobility_mode(as_string(v, f)); }},
        {"trajectory_file", [](auto& c, auto& v, auto& f) { c.trajectory_file = as_string(v, f); }},
        {"trajectory_sampling",
         [](auto& c, auto& v, auto& f) { c.trajectory_sampling = parse_sampling_strategy(as_string(v, f)); }},
        {"trajectory_pool_size", [](auto& c, auto& v, auto& f) { c.trajectory_pool_size = as_int(v, f); }},
    };
    return table;
}

}  // namespace

ScenarioConfig config_from_json(const json& j, ScenarioConfig base) {
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(key, "unknown field");
        try {
            it->second(base, value, key);
        } catch (const json::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
    validate(base);
    return base;
}

json config_to_json(const ScenarioConfig& c) {
    const auto& ch = c.channel;
    json j;
    j["region_width_m"] = c.region_width_m;
    j["region_height_m"] = c.region_height_m;
    j["n_vehicles"] = c.n_vehicles;
    j["n_targets"] = c.n_targets;
    j["n_v2v_links"] = c.n_v2v_links ? json(*c.n_v2v_links) : json(nullptr);
    j["bs_position"] = {c.bs_position.x, c.bs_position.y, c.bs_position.z};
    j["ris_position"] = {c.ris_position.x, c.ris_position.y, c.ris_position.z};
    j["speed_range"] = {c.speed_min_mps, c.speed_max_mps};
    j["slot_duration"] = c.slot_duration_s;
    j["episode_slots"] = c.episode_slots;
    j["payload"] = c.payload_bits;
    j["window"] = c.window_slots;
    j["v2i_power"] = c.v2i_power_dbm;
    j["sensing_power"] = c.sensing_power_dbm;
    j["v2v_power_levels"] = c.v2v_power_levels_dbm;
    j["rate_threshold"] = c.rate_threshold_bps_hz;
    j["snr_threshold"] = c.snr_threshold_db;
    j["noise_comm"] = c.noise_comm_dbm;
    j["noise_sense"] = c.noise_sense_dbm;
    j["bandwidth"] = c.bandwidth_hz;
    j["ris_elements"] = c.ris_elements;
    j["phase_levels"] = c.phase_levels;
    j["seed"] = c.seed;
    j["pathloss_const"] = ch.pathloss_const;
    j["pathloss_exponent"] = {
        {"v2i", ch.exponent_v2i}, {"v2v", ch.exponent_v2v}, {"sense", ch.exponent_sense}, {"ris", ch.exponent_ris}};
    j["shadow_sigma_db"] = {{"v2i", ch.shadow_sigma_v2i_db},
                            {"v2v", ch.shadow_sigma_v2v_db},
                            {"sense", ch.shadow_sigma_sense_db},
                            {"ris", ch.shadow_sigma_ris_db}};
    j["wavelength_m"] = ch.wavelength_m;
    j["element_spacing_m"] = ch.element_spacing_m;
    j["ris_amplitude"] = c.ris_amplitude;
    j["ris_enabled"] = c.ris_enabled;
    j["min_link_distance_m"] = c.min_link_distance_m;
    j["roads_per_direction"] = c.roads_per_direction;
    j["lane_width_m"] = c.lane_width_m;
    j["antenna_height_m"] = c.antenna_height_m;
    j["straight_probability"] = c.straight_probability;
    j["mobility"] = to_string(c.mobility);
    j["trajectory_file"] = c.trajectory_file;
    j["trajectory_sampling"] = to_string(c.trajectory_sampling);
    j["trajectory_pool_size"] = c.trajectory_pool_size;
    return j;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, false);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace ccrsim::harness
