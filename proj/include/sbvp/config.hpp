#pragma once

#include "sbvp/experiments.hpp"

#include <json.hpp>

#include <string>

namespace sbvp {

/// Applies a JSON object whose keys mirror the CLI flags ("base-n", "monitor-norm", ...).
/// Unknown keys and wrongly typed values raise ConfigError.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& doc);

/// Reads and applies a JSON config file.
void apply_json_file(ExperimentConfig& cfg, const std::string& path);

}  // namespace sbvp
