#include "config.hpp"

#include <cmath>
#include <limits>

namespace onsager::tools {

YAML::Node child(const YAML::Node& node, const std::string& key, const std::string& where) {
  if (!node || !node.IsMap() || !node[key]) throw ConfigError("missing key '" + key + "' in " + where);
  return node[key];
}

double parse_real(const YAML::Node& node, const std::string& what) {
  if (!node || !node.IsScalar()) throw ConfigError(what + " must be a number");
  const std::string s = node.Scalar();
  if (s == "inf" || s == "infinity" || s == ".inf") return std::numeric_limits<double>::infinity();
  auto number = [&](const std::string& text) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ConfigError(what + ": '" + s + "' is not a number");
    return v;
  };
  try {
    // "a/b" is accepted so that dyadic scales can be written exactly.
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const double den = number(s.substr(slash + 1));
      if (den == 0.0) throw ConfigError(what + ": zero denominator in '" + s + "'");
      return number(s.substr(0, slash)) / den;
    }
    return number(s);
  } catch (const std::logic_error&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
}

Grid parse_grid(const YAML::Node& node) {
  const int dim = get_or(node, "dim", 1);
  const int n = get_or(node, "n", 256);
  const double length = get_or(node, "length", 1.0);
  const int nt = get_or(node, "nt", 0);
  if (nt == 0) return make_grid(dim, n, length);
  if (node["dt"]) return make_spacetime_grid(dim, n, length, nt, node["dt"].as<double>(), get_or(node, "t0", 0.0));
  return make_grid(dim, n, length, nt, get_or(node, "t_end", 1.0));
}

FieldSpec parse_field_spec(const YAML::Node& node) {
  if (!node) throw ConfigError("missing field spec");
  if (node.IsScalar()) return spec::constant(parse_real(node, "constant field"));
  const std::string kind = child(node, "kind", "field spec").as<std::string>();
  if (kind == "constant") return spec::constant(get_or(node, "value", 0.0));
  if (kind == "fourier_mode") {
    return spec::fourier_mode(get_or(node, "kx", get_or(node, "k", 1)), get_or(node, "amplitude", 1.0),
                              get_or(node, "phase", 0.0), get_or(node, "ky", 0), get_or(node, "kt", 0));
  }
  if (kind == "holder") {
    const std::string axis = get_or<std::string>(node, "axis", "space");
    if (axis != "space" && axis != "time") throw ConfigError("holder axis must be space or time");
    return spec::holder(child(node, "alpha", "holder spec").as<double>(), get_or<std::uint64_t>(node, "seed", 0),
                        get_or(node, "modes", 0), axis == "time" ? SpectralAxis::time : SpectralAxis::space);
  }
  if (kind == "indicator") return spec::indicator(get_or(node, "lower", 0.0), get_or(node, "upper", 0.5));
  if (kind == "riemann") {
    return spec::riemann(get_or(node, "left", 1.0), get_or(node, "right", 0.125), get_or(node, "jump", 0.5));
  }
  if (kind == "vacuum_bump") {
    return spec::vacuum_bump(get_or(node, "floor", 0.0), get_or(node, "center", 0.5), get_or(node, "width", 0.25));
  }
  if (kind == "sum" || kind == "product") {
    const YAML::Node terms = child(node, "terms", kind + " spec");
    if (!terms.IsSequence()) throw ConfigError(kind + " terms must be a list");
    std::vector<FieldSpec> parts;
    for (const auto& t : terms) parts.push_back(parse_field_spec(t));
    return kind == "sum" ? spec::sum(std::move(parts)) : spec::product(std::move(parts));
  }
  throw ConfigError("unknown field kind '" + kind + "'");
}

MollifyMode parse_mode(const std::string& text) {
  if (text == "space") return MollifyMode::space;
  if (text == "spacetime" || text == "space-time") return MollifyMode::spacetime;
  throw ConfigError("mode must be space or spacetime, got '" + text + "'");
}

Axis parse_axis(const std::string& text) {
  if (text == "x") return Axis::x;
  if (text == "y") return Axis::y;
  if (text == "t" || text == "time") return Axis::t;
  throw ConfigError("axis must be x, y or t, got '" + text + "'");
}

SimConfig parse_sim_config(const YAML::Node& node, std::uint64_t seed) {
  SimConfig c;
  c.grid = make_grid(1, get_or(node, "n", 1024), get_or(node, "length", 1.0));
  c.law = PressureLaw::from_gamma(get_or(node, "gamma", 2.0));
  c.cfl = get_or(node, "cfl", 0.4);
  c.t_end = get_or(node, "t_end", 0.1);
  const std::string flux = get_or<std::string>(node, "flux", "llf");
  if (flux != "llf" && flux != "hll") throw ConfigError("flux must be llf or hll");
  c.flux = flux == "llf" ? Flux::llf : Flux::hll;
  if (node["rho0"]) c.rho0 = parse_field_spec(node["rho0"]);
  if (node["v0"]) c.v0 = parse_field_spec(node["v0"]);
  c.seed = seed;
  c.snapshot_every = get_or(node, "snapshot_every", 0.0);
  c.density_floor = get_or(node, "density_floor", 0.0);
  c.max_steps = get_or(node, "max_steps", c.max_steps);
  c.validate();
  return c;
}

namespace {

Exponent exponent(const YAML::Node& node, const std::string& what) {
  if (!node || !node.IsScalar()) throw ConfigError(what + " must be an exponent");
  return Exponent::parse(node.Scalar());
}

std::optional<MixedExponent> mixed(const YAML::Node& node, const std::string& key) {
  if (!node[key]) return std::nullopt;
  const YAML::Node m = node[key];
  if (m.IsSequence() && m.size() == 2) return MixedExponent{exponent(m[0], key), exponent(m[1], key)};
  return MixedExponent{exponent(child(m, "time", key), key + ".time"),
                       exponent(child(m, "space", key), key + ".space")};
}

}  // namespace

CriterionParams parse_criterion_params(const YAML::Node& node) {
  CriterionParams c;
  c.gamma = parse_rational(child(node, "gamma", "criterion params").Scalar());
  c.d = get_or(node, "d", 3);
  c.p = exponent(child(node, "p", "criterion params"), "p");
  c.q = exponent(child(node, "q", "criterion params"), "q");
  c.alpha = parse_rational(child(node, "alpha", "criterion params").Scalar());
  if (node["beta"]) c.beta = parse_rational(node["beta"].Scalar());
  if (node["k"]) c.k = exponent(node["k"], "k");
  if (node["l"]) c.l = exponent(node["l"], "l");
  if (node["rho_floor"]) c.rho_floor = parse_rational(node["rho_floor"].Scalar());
  c.grad_rho = mixed(node, "grad_rho");
  c.dt_rho = mixed(node, "dt_rho");
  c.grad_sqrt_rho = mixed(node, "grad_sqrt_rho");
  c.dt_sqrt_rho = mixed(node, "dt_sqrt_rho");
  if (node["v0"]) c.v0 = exponent(node["v0"], "v0");
  c.allow_endpoint = get_or(node, "allow_endpoint", false);
  c.validate();
  return c;
}

nlohmann::json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string s = node.Scalar();
      if (node.Tag() == "!") return s;  // quoted in the source
      if (s == "true" || s == "false") return s == "true";
      try {
        std::size_t used = 0;
        const long long i = std::stoll(s, &used);
        if (used == s.size()) return i;
      } catch (const std::logic_error&) {
      }
      try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size() && std::isfinite(d)) return d;
      } catch (const std::logic_error&) {
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Map: {
      nlohmann::json out = nlohmann::json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return out;
    }
  }
  return nullptr;
}

}  // namespace onsager::tools
