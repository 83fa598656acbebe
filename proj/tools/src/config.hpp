#pragma once

#include <yaml-cpp/yaml.h>

#include <nlohmann/json.hpp>
#include <string>

#include <onsager/commutator.hpp>
#include <onsager/criteria.hpp>
#include <onsager/error.hpp>
#include <onsager/euler.hpp>
#include <onsager/field.hpp>

namespace onsager::tools {

/// A configuration file or flag set that cannot be turned into a run.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Required key; throws ConfigError naming the missing path.
YAML::Node child(const YAML::Node& node, const std::string& key, const std::string& where);

template <class T>
T get_or(const YAML::Node& node, const std::string& key, T fallback) {
  if (!node || !node[key]) return fallback;
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

/// Accepts numbers and the strings "inf" / "infinity".
double parse_real(const YAML::Node& node, const std::string& what);

Grid parse_grid(const YAML::Node& node);
FieldSpec parse_field_spec(const YAML::Node& node);
MollifyMode parse_mode(const std::string& text);
Axis parse_axis(const std::string& text);
SimConfig parse_sim_config(const YAML::Node& node, std::uint64_t seed);
CriterionParams parse_criterion_params(const YAML::Node& node);

nlohmann::json yaml_to_json(const YAML::Node& node);

}  // namespace onsager::tools
