#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>

#include <onsager/balance.hpp>
#include <onsager/besov.hpp>
#include <onsager/commutator.hpp>
#include <onsager/criteria.hpp>
#include <onsager/euler.hpp>
#include <onsager/table.hpp>

#include "config.hpp"

namespace onsager::tools {

std::string version() { return "0.1.0"; }

namespace fs = std::filesystem;

namespace {

struct Output {
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::pair<std::string, Table>> tables;
  std::vector<std::pair<std::string, nlohmann::json>> documents;
  nlohmann::json checks = nlohmann::json::array();
  bool pass = true;

  void check(const std::string& name, double value, const std::string& expected, bool ok) {
    checks.push_back({{"name", name}, {"value", value}, {"expected", expected}, {"pass", ok}});
    pass = pass && ok;
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_epsilons(const YAML::Node& cfg) {
  if (cfg["epsilons"]) {
    std::vector<double> out;
    for (const auto& e : cfg["epsilons"]) out.push_back(parse_real(e, "epsilon"));
    return out;
  }
  const YAML::Node sweep = child(cfg, "sweep", "config");
  return dyadic_epsilons(child(sweep, "first", "sweep").as<int>(), child(sweep, "last", "sweep").as<int>());
}

std::pair<double, double> parse_norm(const YAML::Node& cfg) {
  const YAML::Node n = cfg["norm"];
  const double p = n && n["p"] ? parse_real(n["p"], "norm.p") : 2.0;
  const double q = n && n["q"] ? parse_real(n["q"], "norm.q") : 2.0;
  return {p, q};
}

nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

// ---------------------------------------------------------------------------

Output cet_rate(const YAML::Node& cfg, std::uint64_t seed) {
  const Grid grid = parse_grid(cfg["grid"]);
  const FieldSpec fs = parse_field_spec(child(cfg, "f", "config"));
  const FieldSpec gs = parse_field_spec(child(cfg, "g", "config"));
  const auto [p, q] = parse_norm(cfg);
  SweepOptions o{p, q, parse_mode(get_or<std::string>(cfg, "mode", "space")), {describe(fs), describe(gs)}};
  const CommutatorReport r = cet_sweep(generate(grid, fs, seed), generate(grid, gs, seed + 1), parse_epsilons(cfg), o);

  Output out;
  out.tables.emplace_back("sweep.csv", report_table(r));
  out.summary["report"] = report_json(r);
  const YAML::Node tol = cfg["tolerance"];
  if (tol && tol["slope"]) {
    const double expected = child(tol["slope"], "expected", "tolerance.slope").as<double>();
    const double within = child(tol["slope"], "within", "tolerance.slope").as<double>();
    out.check("slope", r.fit.slope, "within " + format_double(within) + " of " + format_double(expected),
              r.fit.status == RateStatus::ok && std::abs(r.fit.slope - expected) <= within);
  }
  if (tol && tol["r2_min"]) {
    const double r2 = tol["r2_min"].as<double>();
    out.check("r2", r.fit.r2, ">= " + format_double(r2), r.fit.status == RateStatus::ok && r.fit.r2 >= r2);
  }
  return out;
}

Output lions_rate(const YAML::Node& cfg, std::uint64_t seed) {
  const Grid grid = parse_grid(cfg["grid"]);
  const FieldSpec fs = parse_field_spec(child(cfg, "f", "config"));
  const FieldSpec gs = parse_field_spec(child(cfg, "g", "config"));
  const auto [p, q] = parse_norm(cfg);
  SweepOptions o{p, q, parse_mode(get_or<std::string>(cfg, "mode", "space")), {describe(fs), describe(gs)}};
  const Axis axis = parse_axis(get_or<std::string>(cfg, "axis", "x"));
  const CommutatorReport r =
      lions_sweep(generate(grid, fs, seed), generate(grid, gs, seed + 1), parse_epsilons(cfg), axis, o);

  Output out;
  out.tables.emplace_back("sweep.csv", report_table(r));
  out.summary["report"] = report_json(r);
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < r.norms.size(); ++i) {
    ratios.push_back(r.norms[i + 1] > 0.0 ? r.norms[i] / r.norms[i + 1] : kInfinity);
  }
  nlohmann::json rj = nlohmann::json::array();
  for (double x : ratios) rj.push_back(number(x));
  out.summary["ratios"] = rj;
  const YAML::Node tol = cfg["tolerance"];
  if (tol && tol["min_ratio"]) {
    const double need = tol["min_ratio"].as<double>();
    const std::size_t steps = std::min<std::size_t>(3, ratios.size());
    const std::size_t first = (ratios.size() - steps) / 2;
    double worst = kInfinity;
    for (std::size_t i = first; i < first + steps; ++i) worst = std::min(worst, ratios[i]);
    out.summary["middle_steps"] = {first, first + steps};
    out.check("middle_ratio_min", worst, ">= " + format_double(need), worst >= need);
  }
  return out;
}

Output besov_fit(const YAML::Node& cfg, std::uint64_t seed) {
  const Grid grid = parse_grid(cfg["grid"]);
  const FieldSpec fs = parse_field_spec(child(cfg, "field", "config"));
  const Field f = generate(grid, fs, seed);
  std::vector<double> qs;
  const YAML::Node qn = child(cfg, "q", "config");
  if (qn.IsSequence()) {
    for (const auto& x : qn) qs.push_back(parse_real(x, "q"));
  } else {
    qs.push_back(parse_real(qn, "q"));
  }
  Output out;
  Table table{{"q", "shift_x", "shift_y", "length", "norm"}, {}};
  nlohmann::json fits = nlohmann::json::array();
  const YAML::Node tol = cfg["tolerance"];
  for (double q : qs) {
    const HolderFit fit = holder_exponent_fit(f, q);
    for (const auto& s : fit.samples) {
      table.add_row({q, std::int64_t{s.shift.x}, std::int64_t{s.shift.y}, s.length, s.norm});
    }
    fits.push_back({{"q", number(q)},
                    {"alpha", fit.alpha},
                    {"raw_slope", fit.raw_slope},
                    {"r2", fit.r2},
                    {"out_of_range", fit.out_of_range},
                    {"no_scaling", fit.no_scaling}});
    if (tol && tol["expected_alpha"]) {
      // "1/q" requests the indicator law.
      const std::string spec = tol["expected_alpha"].Scalar();
      const double expected = spec == "1/q" ? 1.0 / q : tol["expected_alpha"].as<double>();
      const double within = get_or(tol, "within", 0.05);
      out.check("alpha(q=" + format_double(q) + ")", fit.alpha,
                "within " + format_double(within) + " of " + format_double(expected),
                !fit.no_scaling && std::abs(fit.alpha - expected) <= within);
    }
  }
  out.summary["field"] = describe(fs);
  out.summary["fits"] = fits;
  out.tables.emplace_back("differences.csv", std::move(table));
  return out;
}

Output euler_run(const YAML::Node& cfg, std::uint64_t seed, const fs::path& dir) {
  const SimConfig sim = parse_sim_config(child(cfg, "solver", "config"), seed);
  const Trajectory tr = simulate(sim);
  Output out;
  Table energy{{"step", "t", "E", "mass", "momentum"}, {}};
  for (std::size_t i = 0; i < tr.records.size(); ++i) {
    const auto& r = tr.records[i];
    energy.add_row({static_cast<std::int64_t>(i), r.time, r.energy, r.mass, r.momentum});
  }
  out.tables.emplace_back("energy.csv", std::move(energy));
  const auto E = tr.energy_series();
  double defect = 0.0;
  for (double e : E) defect = std::max(defect, E.front() > 0 ? std::abs(e - E.front()) / E.front() : std::abs(e));
  const double tol = get_or(cfg["tolerance"], "energy_rel", 1e-12);
  const bool conserved = defect <= tol;
  const bool nonincreasing = tr.max_energy_rise() <= 1e-10;
  out.summary = {{"config", to_json(sim)},
                 {"steps", tr.records.size() - 1},
                 {"E0", E.front()},
                 {"E_end", E.back()},
                 {"max_relative_defect", defect},
                 {"max_energy_rise", tr.max_energy_rise()},
                 {"max_mass_drift", tr.max_mass_drift()},
                 {"max_momentum_drift", tr.max_momentum_drift()},
                 {"conserved", conserved},
                 {"nonincreasing", nonincreasing}};
  out.check("mass_drift", tr.max_mass_drift(), "<= 1e-13", tr.max_mass_drift() <= 1e-13);
  out.check("momentum_drift", tr.max_momentum_drift(), "<= 1e-13", tr.max_momentum_drift() <= 1e-13);
  out.check("energy_rise", tr.max_energy_rise(), "<= 1e-10", nonincreasing);
  const std::string expect = get_or<std::string>(cfg, "expect", "none");
  if (expect == "conserved") {
    out.check("energy_defect", defect, "<= " + format_double(tol), conserved);
  } else if (expect == "dissipative") {
    const double drop = get_or(cfg["tolerance"], "min_drop", 1e-3);
    out.check("energy_drop", 1.0 - E.back() / E.front(), ">= " + format_double(drop),
              E.back() < (1.0 - drop) * E.front());
  } else if (expect != "none") {
    throw ConfigError("expect must be conserved, dissipative or none");
  }
  if (get_or(cfg, "dump_snapshots", false)) dump_trajectory(tr, sim, dir / "snapshots");
  return out;
}

Output balance_sweep(const YAML::Node& cfg, std::uint64_t seed) {
  const SimConfig sim = parse_sim_config(child(cfg, "solver", "config"), seed);
  const Trajectory tr = simulate(sim);
  const MollifyMode mode = parse_mode(get_or<std::string>(cfg, "mode", "space"));
  std::vector<double> eps;
  for (const auto& e : child(cfg, "epsilons", "config")) eps.push_back(parse_real(e, "epsilon"));
  if (eps.size() < 2) throw ConfigError("balance-sweep needs at least two epsilons");
  std::vector<EnergyBalanceReport> reports;
  for (double e : eps) reports.push_back(balance_terms(tr, e, std::nullopt, mode));

  Output out;
  out.tables.emplace_back("balance.csv", balance_table(reports));
  nlohmann::json list = nlohmann::json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  out.summary = {{"config", to_json(sim)}, {"reports", list}};
  const std::string expect = get_or<std::string>(cfg, "expect", "none");
  if (expect == "vanishing") {
    for (int i = 0; i < 6; ++i) {
      bool shrinking = true;
      double worst = 0.0;
      for (std::size_t j = 1; j < reports.size(); ++j) {
        const double ratio = std::abs(reports[j].terms[i]) / std::abs(reports[j - 1].terms[i]);
        worst = std::max(worst, ratio);
        shrinking = shrinking && std::abs(reports[j].terms[i]) < std::abs(reports[j - 1].terms[i]);
      }
      out.check("T" + std::to_string(i + 1) + "_decreasing", worst, "< 1 per halving", shrinking);
    }
  } else if (expect == "plateau") {
    const double a = reports[reports.size() - 2].terms[2];
    const double b = reports.back().terms[2];
    const double change = std::abs(b - a) / std::abs(a);
    out.check("T3_plateau", change, "<= 0.2", change <= 0.2);
  } else if (expect != "none") {
    throw ConfigError("expect must be vanishing, plateau or none");
  }
  return out;
}

Output criterion_check(const YAML::Node& cfg) {
  const CriterionParams params = parse_criterion_params(child(cfg, "params", "config"));
  const std::string theorem = get_or<std::string>(cfg, "check", "local");
  Verdict v;
  if (theorem == "local") {
    v = check_local(params);
  } else if (theorem == "global") {
    v = check_global(params);
  } else if (theorem == "vacuum") {
    v = check_vacuum(params);
  } else {
    throw ConfigError("check must be local, global or vacuum");
  }
  Output out;
  Table t{{"name", "relation", "supplied", "threshold", "pass", "informational"}, {}};
  for (const auto& i : v.items) {
    t.add_row({i.name, i.relation, i.supplied, i.threshold, std::int64_t{i.pass}, std::int64_t{i.informational}});
  }
  out.tables.emplace_back("inequalities.csv", std::move(t));
  out.documents.emplace_back("verdict.json", v.to_json());
  out.summary = {{"verdict", v.to_json()}};
  const std::string expect = get_or<std::string>(cfg, "expect", "pass");
  if (expect != "pass" && expect != "fail") throw ConfigError("expect must be pass or fail");
  out.check("verdict", v.pass ? 1.0 : 0.0, expect, v.pass == (expect == "pass"));
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

fs::path resolve_output(const YAML::Node& config, const std::optional<std::string>& explicit_out) {
  if (explicit_out) return *explicit_out;
  const char* env = std::getenv("ONSAGER_OUT");
  const fs::path root = env && *env ? fs::path(env) : fs::path("onsager-out");
  if (config["output"]) {
    const fs::path p = config["output"].as<std::string>();
    return p.is_absolute() ? p : root / p;
  }
  return root / get_or<std::string>(config, "experiment", "run");
}

RunResult run_experiment(const YAML::Node& config, const RunOptions& options) {
  if (!config || !config.IsMap()) throw ConfigError("config must be a mapping");
  const std::string kind = child(config, "experiment", "config").as<std::string>();
  const std::uint64_t seed = options.seed ? *options.seed : get_or<std::uint64_t>(config, "seed", 0);

  const bool existed = fs::exists(options.out);
  fs::create_directories(options.out);
  RunResult result;
  try {
    Output out;
    if (kind == "cet-rate") {
      out = cet_rate(config, seed);
    } else if (kind == "lions-rate") {
      out = lions_rate(config, seed);
    } else if (kind == "besov-fit") {
      out = besov_fit(config, seed);
    } else if (kind == "euler-run") {
      out = euler_run(config, seed, options.out);
      if (fs::exists(options.out / "snapshots")) result.files.push_back(options.out / "snapshots");
    } else if (kind == "balance-sweep") {
      out = balance_sweep(config, seed);
    } else if (kind == "criterion-check") {
      out = criterion_check(config);
    } else {
      throw ConfigError("unknown experiment '" + kind + "'");
    }

    nlohmann::json manifest{{"experiment", kind},
                            {"version", version()},
                            {"seed", seed},
                            {"timestamp", utc_timestamp()},
                            {"config", yaml_to_json(config)}};
    const fs::path manifest_path = options.out / "manifest.json";
    result.files.push_back(manifest_path);
    write_json(manifest_path, manifest);
    for (const auto& [name, table] : out.tables) {
      result.files.push_back(options.out / name);
      export_csv(table, options.out / name);
    }
    for (const auto& [name, doc] : out.documents) {
      result.files.push_back(options.out / name);
      write_json(options.out / name, doc);
    }
    out.summary["experiment"] = kind;
    out.summary["seed"] = seed;
    out.summary["checks"] = out.checks;
    out.summary["pass"] = out.pass;
    result.files.push_back(options.out / "summary.json");
    write_json(options.out / "summary.json", out.summary);
    result.pass = out.pass;
    result.summary = std::move(out.summary);
  } catch (...) {
    std::error_code ec;
    for (const auto& f : result.files) fs::remove_all(f, ec);
    fs::remove_all(options.out / "snapshots", ec);
    if (!existed) fs::remove_all(options.out, ec);
    throw;
  }
  return result;
}

}  // namespace onsager::tools
