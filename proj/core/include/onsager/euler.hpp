#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <vector>

#include "onsager/field.hpp"

namespace onsager {

/// pi(rho) = kappa rho^gamma with kappa = (gamma - 1)^2 / (4 gamma).
struct PressureLaw {
  double gamma = 2.0;
  double kappa = 0.125;

  static PressureLaw from_gamma(double gamma);
};

Field pressure(const Field& rho, const PressureLaw& law);
/// sqrt(gamma kappa rho^(gamma - 1)); zero on vacuum.
Field sound_speed(const Field& rho, const PressureLaw& law);

/// Conservative variables of the 1-D isentropic system on a space-only grid.
struct EulerState {
  Field rho;
  Field m;
  double time = 0.0;
};

/// m = rho v, with m = 0 wherever rho = 0. Rejects negative density.
EulerState make_state(const Field& rho, const Field& v, double time = 0.0);
/// m / rho, defined as 0 on vacuum.
Field velocity(const EulerState& state);

double total_mass(const EulerState& state);
double total_momentum(const EulerState& state);
/// Integral of |m|; the scale momentum drift is measured against.
double momentum_scale(const EulerState& state);
/// Integral of m^2 / (2 rho) + kappa rho^gamma / (gamma - 1), vacuum kinetic part 0.
double energy(const EulerState& state, const PressureLaw& law);

enum class Flux { llf, hll };

struct SimConfig {
  Grid grid = make_grid(1, 256);
  PressureLaw law = PressureLaw::from_gamma(2.0);
  double cfl = 0.4;
  double t_end = 0.1;
  Flux flux = Flux::llf;
  FieldSpec rho0 = spec::constant(1.0);
  FieldSpec v0 = spec::constant(0.0);
  std::uint64_t seed = 0;
  /// Time between stored snapshots; steps are shortened to land on each
  /// snapshot time. Zero stores only the initial and final states.
  double snapshot_every = 0.0;
  double density_floor = 0.0;
  long max_steps = 10'000'000;

  /// Throws InvalidArgument unless 0 < cfl < 1, t_end > 0, grid is 1-D
  /// space-only, snapshot_every >= 0 and density_floor >= 0.
  void validate() const;
};

/// Largest stable step, cfl dx / max(|v| + c_s).
double stable_dt(const EulerState& state, const SimConfig& config);

/// One SSP-RK2 step with minmod-limited reconstruction of (rho, m). The
/// second overload uses stable_dt. Throws NumericalError on non-finite data.
EulerState step(const EulerState& state, const SimConfig& config, double dt);
EulerState step(const EulerState& state, const SimConfig& config);

struct StepRecord {
  double time = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double momentum_scale = 0.0;
  double energy = 0.0;
};

struct Trajectory {
  PressureLaw law;
  std::vector<EulerState> snapshots;
  /// Initial state followed by one record per step.
  std::vector<StepRecord> records;

  std::vector<double> energy_series() const;
  std::vector<double> time_series() const;
  /// Largest per-step relative change of total mass and total momentum.
  double max_mass_drift() const;
  double max_momentum_drift() const;
  /// Largest per-step energy increase divided by E(0) (<= 0 when E never rises).
  double max_energy_rise() const;
};

EulerState initial_state(const SimConfig& config);
Trajectory simulate(const SimConfig& config);

/// Snapshot times as a space-time grid with dt = snapshot_every. Requires
/// uniformly spaced snapshots.
Grid snapshot_grid(const Trajectory& trajectory);
Field stacked_density(const Trajectory& trajectory);
Field stacked_momentum(const Trajectory& trajectory);

nlohmann::json to_json(const SimConfig& config);

/// snapshot_NNNN.csv with columns x, rho, v, m, plus manifest.json holding
/// the config, E(t) series and the conservation ledger.
void dump_trajectory(const Trajectory& trajectory, const SimConfig& config, const std::filesystem::path& dir);

}  // namespace onsager
