#include "onsager/balance.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "onsager/error.hpp"
#include "onsager/mollify.hpp"
#include "onsager/summation.hpp"

namespace onsager {

double PhiWindow::operator()(double t) const {
  if (t <= start || t >= stop) return 0.0;
  return std::min({1.0, (t - start) / ramp, (stop - t) / ramp});
}

namespace {

// Time range on which every balance integrand is defined: the mollified
// window, shrunk by one sample per end for the centered differences.
std::pair<double, double> usable_range(const Grid& g, double epsilon, MollifyMode mode) {
  int first = 0, count = g.nt;
  if (mode == MollifyMode::spacetime) std::tie(first, count) = interior_window(g, epsilon);
  require(count >= 3, "too few snapshots left for centered time differences");
  return {g.time(first + 1), g.time(first + count - 2)};
}

Field restrict_to(const Field& f, const Grid& target) {
  if (f.grid() == target) return f;
  const int first = static_cast<int>(std::lround((target.t0 - f.grid().t0) / f.grid().dt));
  return f.window(first, target.nt);
}

Field velocity_of(const Field& rho, const Field& m) {
  std::vector<double> v(rho.data().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = rho.data()[i];
    v[i] = r > 0.0 ? m.data()[i] / r : 0.0;
  }
  return Field(rho.grid(), 1, std::move(v));
}

// sum_j phi(t_j) dt int f(t_j, x) dx
double weighted_integral(const Field& f, const PhiWindow& phi) {
  const Grid& g = f.grid();
  std::vector<double> per_time(g.nt);
  for (int j = 0; j < g.nt; ++j) {
    auto s = f.slice(j);
    per_time[j] = phi(g.time(j)) * pairwise_sum(s) * g.cell_volume();
  }
  return pairwise_sum(per_time) * g.dt;
}

}  // namespace

PhiWindow default_phi_window(const Trajectory& traj, double epsilon, MollifyMode mode) {
  const Grid g = snapshot_grid(traj);
  const auto [a, b] = usable_range(g, epsilon, mode);
  const PhiWindow w{a, b, std::max(epsilon, 4.0 * g.dt)};
  require(b - a >= 2.0 * w.ramp, "trajectory too short for a test-function window at this epsilon");
  return w;
}

EnergyBalanceReport balance_terms(const Trajectory& traj, double epsilon, std::optional<PhiWindow> phi_opt,
                                  MollifyMode mode) {
  const Grid g = snapshot_grid(traj);
  const PressureLaw& law = traj.law;
  const auto [a, b] = usable_range(g, epsilon, mode);
  const PhiWindow phi = phi_opt ? *phi_opt : default_phi_window(traj, epsilon, mode);
  require(phi.ramp > 0.0 && phi.stop - phi.start >= 2.0 * phi.ramp, "malformed test-function window");
  require(phi.start >= a - 1e-12 && phi.stop <= b + 1e-12,
          "test-function window is not compactly supported in the usable time range");

  const Field rho = stacked_density(traj);
  const Field m = stacked_momentum(traj);
  const Field v = velocity_of(rho, m);
  const Field rho_g = transform(rho, [&](double r) { return r > 0.0 ? std::pow(r, law.gamma) : 0.0; });

  // Mollified quantities, all on the same window W1.
  const Field w = mollify(v, epsilon, mode);
  const Grid& g1 = w.grid();
  const Field m_eps = mollify(m, epsilon, mode);
  const Field rho_eps = mollify(rho, epsilon, mode);
  const Field mv_eps = mollify(m * v, epsilon, mode);
  const Field vv_eps = mollify(v * v, epsilon, mode);
  const Field rho_g_eps = mollify(rho_g, epsilon, mode);
  const Field rho1 = restrict_to(rho, g1);
  const Field v1 = restrict_to(v, g1);
  const Field rho_g1 = restrict_to(rho_g, g1);

  const Field rho_w = rho1 * w;
  const Field ww = w * w;
  const Field X = 0.5 * (rho1 * ww) + (law.kappa / (law.gamma - 1.0)) * rho_g1;

  // Time differences live on W2, one sample inside W1 at each end.
  const Field dt_m_eps = time_derivative(m_eps);
  const Field dt_rho_w = time_derivative(rho_w);
  const Field dt_rho_eps = time_derivative(rho_eps);
  const Field dt_rho = time_derivative(rho1);
  const Field dt_X = time_derivative(X);
  const Field dt_rho_g = time_derivative(rho_g1);
  const Grid& g2 = dt_X.grid();
  auto on2 = [&](const Field& f) { return restrict_to(f, g2); };

  const Field w2 = on2(w);
  const Field rho2 = on2(rho1);
  const Field v2 = on2(v1);
  const Field ww2 = on2(ww);
  const Field wx = gradient(w2, 0);
  const Field wwx = gradient(ww2, 0);

  EnergyBalanceReport r;
  r.epsilon = epsilon;
  r.mode = mode;
  r.phi = phi;
  r.lhs = -weighted_integral(dt_X, phi);
  auto& T = r.terms;
  T[0] = weighted_integral(w2 * (dt_m_eps - dt_rho_w), phi);
  T[1] = -weighted_integral(wx * (on2(mv_eps) - rho2 * on2(vv_eps)), phi);
  T[2] = -weighted_integral(wx * rho2 * (on2(vv_eps) - ww2), phi);
  T[3] = -0.5 * weighted_integral(wwx * (on2(rho_w) - on2(m_eps)), phi);
  T[4] = -0.5 * weighted_integral(ww2 * (dt_rho_eps - dt_rho), phi);
  T[5] = law.kappa * weighted_integral(w2 * gradient(on2(rho_g_eps), 0) - v2 * gradient(on2(rho_g1), 0), phi);
  double sum = 0.0;
  for (double t : T) sum += t;
  r.residual = r.lhs - sum;
  r.pressure_transport_residual =
      law.kappa * weighted_integral(v2 * gradient(on2(rho_g1), 0), phi) -
      law.kappa / (law.gamma - 1.0) * weighted_integral(dt_rho_g, phi);
  for (double t : T) {
    if (!std::isfinite(t)) throw NumericalError("non-finite balance term");
  }
  return r;
}

nlohmann::json to_json(const EnergyBalanceReport& r) {
  return {
      {"epsilon", r.epsilon},
      {"mode", to_string(r.mode)},
      {"phi", {{"start", r.phi.start}, {"stop", r.phi.stop}, {"ramp", r.phi.ramp}}},
      {"lhs", r.lhs},
      {"terms", r.terms},
      {"residual", r.residual},
      {"pressure_transport_residual", r.pressure_transport_residual},
  };
}

Table balance_table(std::span<const EnergyBalanceReport> reports) {
  Table t{{"epsilon", "lhs", "T1", "T2", "T3", "T4", "T5", "T6", "residual", "pressure_transport_residual"}, {}};
  for (const auto& r : reports) {
    t.add_row({r.epsilon, r.lhs, r.terms[0], r.terms[1], r.terms[2], r.terms[3], r.terms[4], r.terms[5],
               r.residual, r.pressure_transport_residual});
  }
  return t;
}

}  // namespace onsager
