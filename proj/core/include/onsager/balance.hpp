#pragma once

#include <array>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>

#include "onsager/commutator.hpp"
#include "onsager/euler.hpp"
#include "onsager/table.hpp"

namespace onsager {

/// Trapezoidal test function in time: 0 before `start`, rising linearly to 1
/// over `ramp`, 1 on the plateau, falling to 0 at `stop`.
struct PhiWindow {
  double start = 0.0;
  double stop = 1.0;
  double ramp = 0.1;

  double operator()(double t) const;
};

/// Terms of the mollified local energy balance, with w = v^eps and
/// X = rho w^2 / 2 + kappa rho^gamma / (gamma - 1):
///
///   lhs = int phi' X  (evaluated as -int phi D_t X)
///   T1  =  int phi w [D_t (rho v)^eps - D_t (rho w)]
///   T2  =  int phi w d_x[(rho v^2)^eps - rho (v^2)^eps]
///   T3  = -int phi (d_x w) rho [(v^2)^eps - w^2]
///   T4  =  1/2 int phi w^2 d_x[rho w - (rho v)^eps]
///   T5  = -1/2 int phi w^2 [D_t rho^eps - D_t rho]
///   T6  =  kappa int phi [w d_x (rho^gamma)^eps - v d_x rho^gamma]
///
/// For a smooth solution lhs = T1 + ... + T6 exactly; residual = lhs - sum.
/// D_t is the centered difference over snapshots and d_x is spectral; T2
/// and T4 are evaluated after moving d_x onto w.
struct EnergyBalanceReport {
  double epsilon = 0.0;
  MollifyMode mode = MollifyMode::space;
  PhiWindow phi;
  double lhs = 0.0;
  std::array<double, 6> terms{};
  double residual = 0.0;
  /// kappa int phi v d_x rho^gamma - kappa/(gamma-1) int phi D_t rho^gamma,
  /// which vanishes for smooth solutions.
  double pressure_transport_residual = 0.0;
};

/// Plateau window inside the samples where every time difference is
/// defined, with ramps of width max(eps, 4 snapshot spacings).
PhiWindow default_phi_window(const Trajectory& trajectory, double epsilon, MollifyMode mode);

/// The trajectory must hold uniformly spaced snapshots. Throws
/// InvalidArgument when phi is not compactly supported inside the usable
/// time range or eps is inadmissible for the grid.
EnergyBalanceReport balance_terms(const Trajectory& trajectory, double epsilon,
                                  std::optional<PhiWindow> phi = std::nullopt,
                                  MollifyMode mode = MollifyMode::space);

nlohmann::json to_json(const EnergyBalanceReport& report);
/// Columns epsilon, lhs, T1..T6, residual, pressure_transport_residual.
Table balance_table(std::span<const EnergyBalanceReport> reports);

}  // namespace onsager
