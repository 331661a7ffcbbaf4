#pragma once

#include <string>

#include "json.hpp"

#include "ccrsim/config.hpp"

namespace ccrsim::harness {

/// Overlays the fields present in `j` onto `base`. Unknown keys and wrongly
/// typed values throw ConfigError naming the field; the result is validated.
ScenarioConfig config_from_json(const nlohmann::json& j, ScenarioConfig base = {});

/// Every field, so that config_from_json(config_to_json(c)) == c.
nlohmann::json config_to_json(const ScenarioConfig& config);

ScenarioConfig load_config(const std::string& path);

}  // namespace ccrsim::harness
