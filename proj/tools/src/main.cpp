// onsager: command-line front end for the commutator, Besov, solver and
// criterion experiments.
//
// Exit codes: 0 ran and every declared tolerance held, 1 ran with tolerance
// failures, 2 configuration or runtime error.

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <iostream>
#include <optional>
#include <string>

#include <onsager/besov.hpp>
#include <onsager/commutator.hpp>
#include <onsager/field_io.hpp>
#include <onsager/mollify.hpp>
#include <onsager/parallel.hpp>

#include "config.hpp"
#include "experiment.hpp"

namespace fs = std::filesystem;
using namespace onsager;
using namespace onsager::tools;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  int threads = 1;
  bool quiet = false;
};

YAML::Node inline_yaml(const std::string& text, const std::string& what) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot parse " + what + ": " + e.what());
  }
}

Field read_field(const fs::path& path) {
  return path.extension() == ".csv" ? read_field_csv(path) : read_field_binary(path);
}

void write_field(const Field& f, const fs::path& path) {
  if (path.extension() == ".csv") {
    write_field_csv(f, path);
  } else {
    write_field_binary(f, path);
  }
}

int finish_run(const YAML::Node& config, const Globals& g) {
  RunOptions o{resolve_output(config, g.out), g.seed, g.quiet};
  const RunResult r = run_experiment(config, o);
  if (!g.quiet) {
    std::cout << r.summary.dump(2) << '\n';
    std::cerr << "outputs in " << o.out.string() << '\n';
  }
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mollification, commutator and energy-balance laboratory"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  std::string out;
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides the config)");
  auto* out_opt = app.add_option("--out", out, "Output path (default under $ONSAGER_OUT)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Suppress the summary on stdout");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a field spec on a grid");
  std::string gen_grid = "{dim: 1, n: 1024}", gen_spec;
  gen->add_option("--grid", gen_grid, "Grid as inline YAML");
  gen->add_option("--spec", gen_spec, "Field spec as inline YAML")->required();

  // mollify
  auto* mol = app.add_subcommand("mollify", "Mollify a field file");
  std::string mol_in, mol_mode = "space";
  double mol_eps = 0.0;
  mol->add_option("input", mol_in, "Field file (.bin or .csv)")->required();
  mol->add_option("--epsilon", mol_eps, "Mollification scale")->required();
  mol->add_option("--mode", mol_mode, "space or spacetime");

  // besov
  auto* bes = app.add_subcommand("besov", "Fit the Hölder exponent of a field file");
  std::string bes_in;
  std::vector<double> bes_q{2.0};
  bes->add_option("input", bes_in, "Field file")->required();
  bes->add_option("--q", bes_q, "Integrability exponents");

  // commutator
  auto* com = app.add_subcommand("commutator", "Commutator of two field files at one epsilon");
  std::string com_kind = "cet", com_f, com_g, com_mode = "space", com_axis = "x";
  double com_eps = 0.0, com_p = 2.0, com_q = 2.0;
  com->add_option("--kind", com_kind, "cet or lions");
  com->add_option("f", com_f, "First field file")->required();
  com->add_option("g", com_g, "Second field file")->required();
  com->add_option("--epsilon", com_eps, "Mollification scale")->required();
  com->add_option("--mode", com_mode, "space or spacetime");
  com->add_option("--axis", com_axis, "Derivative axis for lions: x, y or t");
  com->add_option("--p", com_p, "Time integrability of the reported norm");
  com->add_option("--q", com_q, "Space integrability of the reported norm");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the 1-D Euler solver and dump snapshots");
  std::string sim_solver = "{}", sim_expect = "none";
  sim->add_option("--solver", sim_solver, "Solver settings as inline YAML");
  sim->add_option("--expect", sim_expect, "conserved, dissipative or none");

  // balance
  auto* bal = app.add_subcommand("balance", "Energy-balance terms over an epsilon sweep");
  std::string bal_solver = "{}", bal_mode = "space", bal_expect = "none";
  std::vector<double> bal_eps{1.0 / 32, 1.0 / 64, 1.0 / 128};
  bal->add_option("--solver", bal_solver, "Solver settings as inline YAML");
  bal->add_option("--epsilons", bal_eps, "Mollification scales");
  bal->add_option("--mode", bal_mode, "space or spacetime");
  bal->add_option("--expect", bal_expect, "vanishing, plateau or none");

  // check
  auto* chk = app.add_subcommand("check", "Check exponent hypotheses of the conservation criteria");
  std::string chk_theorem = "local", chk_params;
  chk->add_option("--criterion", chk_theorem, "local, global or vacuum");
  chk->add_option("--params", chk_params, "Parameters as inline YAML")->required();

  // run
  auto* run = app.add_subcommand("run", "Run an experiment config file");
  std::string run_config;
  run->add_option("config", run_config, "YAML experiment config")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) g.seed = seed;
  if (*out_opt) g.out = out;

  try {
    set_thread_count(g.threads);
    if (*run) {
      YAML::Node config;
      try {
        config = YAML::LoadFile(run_config);
      } catch (const YAML::Exception& e) {
        throw ConfigError("cannot parse " + run_config + ": " + e.what());
      }
      return finish_run(config, g);
    }
    if (*gen) {
      if (!g.out) throw ConfigError("generate needs --out <file>");
      const Grid grid = parse_grid(inline_yaml(gen_grid, "--grid"));
      const FieldSpec s = parse_field_spec(inline_yaml(gen_spec, "--spec"));
      write_field(generate(grid, s, g.seed.value_or(0)), *g.out);
      return 0;
    }
    if (*mol) {
      if (!g.out) throw ConfigError("mollify needs --out <file>");
      write_field(mollify(read_field(mol_in), mol_eps, parse_mode(mol_mode)), *g.out);
      return 0;
    }
    if (*bes) {
      const Field f = read_field(bes_in);
      nlohmann::json fits = nlohmann::json::array();
      for (double q : bes_q) {
        const HolderFit fit = holder_exponent_fit(f, q);
        fits.push_back({{"q", q}, {"alpha", fit.alpha}, {"raw_slope", fit.raw_slope}, {"r2", fit.r2},
                        {"out_of_range", fit.out_of_range}, {"no_scaling", fit.no_scaling}});
      }
      if (!g.quiet) std::cout << fits.dump(2) << '\n';
      return 0;
    }
    if (*com) {
      const Field f = read_field(com_f);
      const Field h = read_field(com_g);
      const MollifyMode mode = parse_mode(com_mode);
      Field c = com_kind == "cet" ? cet_commutator(f, h, com_eps, mode)
                : com_kind == "lions"
                    ? lions_commutator(f, h, com_eps, parse_axis(com_axis), mode)
                    : throw ConfigError("kind must be cet or lions");
      if (g.out) write_field(c, *g.out);
      if (!g.quiet) {
        nlohmann::json j{{"kind", com_kind}, {"epsilon", com_eps}, {"norm", mixed_norm(c, com_p, com_q)}};
        std::cout << j.dump(2) << '\n';
      }
      return 0;
    }
    if (*sim) {
      YAML::Node config;
      config["experiment"] = "euler-run";
      config["solver"] = inline_yaml(sim_solver, "--solver");
      config["expect"] = sim_expect;
      config["dump_snapshots"] = true;
      return finish_run(config, g);
    }
    if (*bal) {
      YAML::Node config;
      config["experiment"] = "balance-sweep";
      config["solver"] = inline_yaml(bal_solver, "--solver");
      config["mode"] = bal_mode;
      config["expect"] = bal_expect;
      for (double e : bal_eps) config["epsilons"].push_back(e);
      return finish_run(config, g);
    }
    if (*chk) {
      const CriterionParams params = parse_criterion_params(inline_yaml(chk_params, "--params"));
      const Verdict v = chk_theorem == "local"    ? check_local(params)
                        : chk_theorem == "global" ? check_global(params)
                        : chk_theorem == "vacuum" ? check_vacuum(params)
                                                  : throw ConfigError("criterion must be local, global or vacuum");
      if (!g.quiet) std::cout << v.to_json().dump(2) << '\n';
      return v.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
