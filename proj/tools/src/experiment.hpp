#pragma once

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace onsager::tools {

struct RunOptions {
  std::filesystem::path out;
  /// Overrides the config's seed when set.
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

struct RunResult {
  /// All declared tolerances met.
  bool pass = true;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
};

/// Runs one experiment described by `config` (key `experiment` selects
/// cet-rate, lions-rate, besov-fit, euler-run, balance-sweep or
/// criterion-check) and writes manifest.json, the sweep CSV and
/// summary.json into options.out. Files written before a failure are removed.
RunResult run_experiment(const YAML::Node& config, const RunOptions& options);

/// Output directory: explicit path, else `output` from the config resolved
/// against $ONSAGER_OUT (default "onsager-out"), else <root>/<experiment>.
std::filesystem::path resolve_output(const YAML::Node& config, const std::optional<std::string>& explicit_out);

std::string version();

}  // namespace onsager::tools
