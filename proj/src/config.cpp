#include "sbvp/config.hpp"

#include <fstream>

namespace sbvp {

void apply_json(ExperimentConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config file must contain a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "problem") cfg.problem = value.get<std::string>();
      else if (key == "method") cfg.method = parse_method(value.get<std::string>());
      else if (key == "base-n") cfg.base_n = value.get<std::size_t>();
      else if (key == "switching") cfg.switching = value.get<std::size_t>();
      else if (key == "midpoints") cfg.midpoints = value.get<std::size_t>();
      else if (key == "realizations") cfg.realizations = value.get<std::size_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "alpha") cfg.alpha = value.get<double>();
      else if (key == "beta") cfg.beta = value.get<double>();
      else if (key == "monitor-norm") cfg.monitor_norm = value.get<std::string>();
      else if (key == "jobs") cfg.jobs = value.get<unsigned>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "c1") cfg.c1 = value.get<double>();
      else if (key == "c2") cfg.c2 = value.get<double>();
      else if (key == "shooting-points") cfg.fixed_interior = value.get<std::size_t>();
      else if (key == "oracle-refine") cfg.oracle_refine = value.get<int>();
      else if (key == "full-norm")
        cfg.error_norm = value.get<bool>() ? ErrorNorm::FullVector : ErrorNorm::FirstComponent;
      else if (key == "newton-tol") cfg.newton.tol = value.get<double>();
      else if (key == "max-iter") cfg.newton.max_iter = value.get<int>();
      else if (key == "fd-epsilon") cfg.newton.fd_epsilon = value.get<double>();
      else if (key == "fd-central") cfg.newton.fd_central = value.get<bool>();
      else if (key == "timing") cfg.timing = value.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void apply_json_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse config file '" + path + "': " + e.what());
  }
  apply_json(cfg, doc);
}

}  // namespace sbvp
