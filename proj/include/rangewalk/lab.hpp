#pragma once

// Named experiments over the estimators, each with built-in checks whose
// thresholds live in the config (they are calibrated constants, not
// proven constants).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rangewalk/report.hpp"

namespace rangewalk {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::string> graphs;
  std::vector<std::uint64_t> horizons;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::uint32_t r = 2;
  std::string out = "out";
  int workers = 0;
  bool bits = false;
  bool plot = true;

  std::uint64_t escape_horizon = 10000;
  std::uint64_t escape_samples = 2000;
  std::uint64_t exact_max_n = 10;    // exact rows only up to here
  std::uint64_t cover_max_n = 1000;  // K, L and the covering bound up to here
  std::uint64_t plugin_max_n = 100;  // plug-in entropy up to here
  std::string plot_statistic = "boundary_ratio";
  /// Named thresholds and probe parameters, e.g. "transient_ratio_min".
  std::map<std::string, double> constants;

  static const std::vector<std::string>& experiments();
  /// Defaults for a named experiment; throws ConfigError if unknown.
  static ExperimentConfig defaults(const std::string& experiment);
  /// Overlays the keys present in `j` onto `base`.
  static ExperimentConfig from_json(const nlohmann::json& j, ExperimentConfig base);
  nlohmann::json to_json() const;
  /// Throws ConfigError when the key is missing.
  double constant(const std::string& key) const;
  void validate() const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// results.csv, results.json, config.json and (if cfg.plot) plot.svg in cfg.out.
void emit_outputs(const ExperimentReport& report, const ExperimentConfig& cfg);

}  // namespace rangewalk
