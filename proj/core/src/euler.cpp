#include "onsager/euler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "onsager/error.hpp"
#include "onsager/summation.hpp"
#include "onsager/table.hpp"

namespace onsager {

PressureLaw PressureLaw::from_gamma(double gamma) {
  require(std::isfinite(gamma) && gamma > 1.0, "gamma must exceed 1");
  return {gamma, (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma)};
}

namespace {

void check_density(const Field& rho) {
  for (double r : rho.data()) require(r >= 0.0, "density must be nonnegative");
}

double pressure_of(double r, const PressureLaw& law) { return r > 0.0 ? law.kappa * std::pow(r, law.gamma) : 0.0; }

double sound_of(double r, const PressureLaw& law) {
  return r > 0.0 ? std::sqrt(law.gamma * law.kappa * std::pow(r, law.gamma - 1.0)) : 0.0;
}

double integrate(std::vector<double> values, double dx) { return pairwise_sum(values) * dx; }

}  // namespace

Field pressure(const Field& rho, const PressureLaw& law) {
  check_density(rho);
  return transform(rho, [&](double r) { return pressure_of(r, law); });
}

Field sound_speed(const Field& rho, const PressureLaw& law) {
  check_density(rho);
  return transform(rho, [&](double r) { return sound_of(r, law); });
}

EulerState make_state(const Field& rho, const Field& v, double time) {
  require_same_grid(rho, v, "make_state");
  require(rho.grid().dim == 1 && !rho.grid().has_time(), "Euler states live on 1-D space-only grids");
  require(rho.components() == 1 && v.components() == 1, "Euler states are scalar in 1-D");
  check_density(rho);
  std::vector<double> m(rho.data().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = rho.data()[i] > 0.0 ? rho.data()[i] * v.data()[i] : 0.0;
  return {rho, Field(rho.grid(), 1, std::move(m)), time};
}

Field velocity(const EulerState& s) {
  std::vector<double> v(s.rho.data().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = s.rho.data()[i];
    v[i] = r > 0.0 ? s.m.data()[i] / r : 0.0;
  }
  return Field(s.rho.grid(), 1, std::move(v));
}

double total_mass(const EulerState& s) {
  auto d = s.rho.data();
  return integrate({d.begin(), d.end()}, s.rho.grid().dx());
}

double total_momentum(const EulerState& s) {
  auto d = s.m.data();
  return integrate({d.begin(), d.end()}, s.m.grid().dx());
}

double momentum_scale(const EulerState& s) {
  std::vector<double> a(s.m.data().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(s.m.data()[i]);
  return integrate(std::move(a), s.m.grid().dx());
}

double energy(const EulerState& s, const PressureLaw& law) {
  std::vector<double> e(s.rho.data().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double r = s.rho.data()[i];
    const double m = s.m.data()[i];
    const double kinetic = r > 0.0 ? 0.5 * m * m / r : 0.0;
    e[i] = kinetic + pressure_of(r, law) / (law.gamma - 1.0);
  }
  return integrate(std::move(e), s.rho.grid().dx());
}

void SimConfig::validate() const {
  require(grid.dim == 1 && !grid.has_time(), "the solver runs on 1-D space-only grids");
  require(cfl > 0.0 && cfl < 1.0, "cfl must lie in (0, 1)");
  require(std::isfinite(t_end) && t_end > 0.0, "t_end must be positive");
  require(snapshot_every >= 0.0 && std::isfinite(snapshot_every), "snapshot_every must be >= 0");
  require(density_floor >= 0.0 && std::isfinite(density_floor), "density_floor must be >= 0");
  require(max_steps >= 1, "max_steps must be positive");
  require(law.gamma > 1.0 && law.kappa > 0.0, "invalid pressure law");
}

// ---------------------------------------------------------------------------
// Finite-volume scheme

namespace {

struct Conserved {
  std::vector<double> rho;
  std::vector<double> m;
};

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

struct Face {
  double rho, m, v, c;
};

Face face_state(double rho, double m, double vacuum, const PressureLaw& law) {
  rho = std::max(rho, 0.0);
  const double v = rho > vacuum ? m / rho : 0.0;
  return {rho, rho > vacuum ? m : 0.0, v, sound_of(rho, law)};
}

double vacuum_level(const std::vector<double>& rho) {
  return 1e-12 * *std::max_element(rho.begin(), rho.end());
}

// Semi-discrete right-hand side -(F_{i+1/2} - F_{i-1/2}) / dx.
Conserved rhs(const Conserved& u, const SimConfig& cfg) {
  const std::size_t n = u.rho.size();
  const PressureLaw& law = cfg.law;
  const double vacuum = vacuum_level(u.rho);
  std::vector<double> sr(n), sm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = (i + n - 1) % n, r = (i + 1) % n;
    sr[i] = minmod(u.rho[i] - u.rho[l], u.rho[r] - u.rho[i]);
    sm[i] = minmod(u.m[i] - u.m[l], u.m[r] - u.m[i]);
  }
  std::vector<double> fr(n), fm(n);  // flux through the face i + 1/2
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = (i + 1) % n;
    const Face L = face_state(u.rho[i] + 0.5 * sr[i], u.m[i] + 0.5 * sm[i], vacuum, law);
    const Face R = face_state(u.rho[r] - 0.5 * sr[r], u.m[r] - 0.5 * sm[r], vacuum, law);
    const double flr = L.m, flm = L.m * L.v + pressure_of(L.rho, law);
    const double frr = R.m, frm = R.m * R.v + pressure_of(R.rho, law);
    if (cfg.flux == Flux::llf) {
      const double a = std::max(std::abs(L.v) + L.c, std::abs(R.v) + R.c);
      fr[i] = 0.5 * (flr + frr) - 0.5 * a * (R.rho - L.rho);
      fm[i] = 0.5 * (flm + frm) - 0.5 * a * (R.m - L.m);
    } else {
      const double sl = std::min(L.v - L.c, R.v - R.c);
      const double sr_ = std::max(L.v + L.c, R.v + R.c);
      if (sl >= 0.0) {
        fr[i] = flr;
        fm[i] = flm;
      } else if (sr_ <= 0.0) {
        fr[i] = frr;
        fm[i] = frm;
      } else {
        const double w = 1.0 / (sr_ - sl);
        fr[i] = (sr_ * flr - sl * frr + sl * sr_ * (R.rho - L.rho)) * w;
        fm[i] = (sr_ * flm - sl * frm + sl * sr_ * (R.m - L.m)) * w;
      }
    }
  }
  const double inv_dx = 1.0 / cfg.grid.dx();
  Conserved out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = (i + n - 1) % n;
    out.rho[i] = -(fr[i] - fr[l]) * inv_dx;
    out.m[i] = -(fm[i] - fm[l]) * inv_dx;
  }
  return out;
}

void enforce_admissible(Conserved& u, const SimConfig& cfg) {
  for (double& r : u.rho) r = std::max(r, cfg.density_floor);
  const double vacuum = vacuum_level(u.rho);
  for (std::size_t i = 0; i < u.rho.size(); ++i) {
    if (u.rho[i] < vacuum || u.rho[i] == 0.0) u.m[i] = 0.0;
  }
}

void check_finite(const Conserved& u, double time) {
  for (std::size_t i = 0; i < u.rho.size(); ++i) {
    if (!std::isfinite(u.rho[i]) || !std::isfinite(u.m[i])) {
      std::ostringstream os;
      os << "non-finite state at cell " << i << " near t = " << time;
      throw NumericalError(os.str());
    }
  }
}

}  // namespace

double stable_dt(const EulerState& s, const SimConfig& cfg) {
  double speed = 0.0;
  for (std::size_t i = 0; i < s.rho.data().size(); ++i) {
    const double r = s.rho.data()[i];
    const double v = r > 0.0 ? s.m.data()[i] / r : 0.0;
    speed = std::max(speed, std::abs(v) + sound_of(r, cfg.law));
  }
  if (speed == 0.0) return cfg.t_end;
  return cfg.cfl * cfg.grid.dx() / speed;
}

EulerState step(const EulerState& s, const SimConfig& cfg, double dt) {
  require(dt > 0.0 && std::isfinite(dt), "time step must be positive");
  require(s.rho.grid() == cfg.grid, "state grid does not match the config grid");
  Conserved u0{{s.rho.data().begin(), s.rho.data().end()}, {s.m.data().begin(), s.m.data().end()}};
  const std::size_t n = u0.rho.size();

  const Conserved k0 = rhs(u0, cfg);
  Conserved u1 = u0;
  for (std::size_t i = 0; i < n; ++i) {
    u1.rho[i] += dt * k0.rho[i];
    u1.m[i] += dt * k0.m[i];
  }
  enforce_admissible(u1, cfg);
  check_finite(u1, s.time);

  const Conserved k1 = rhs(u1, cfg);
  Conserved u2 = u0;
  for (std::size_t i = 0; i < n; ++i) {
    u2.rho[i] = 0.5 * u0.rho[i] + 0.5 * (u1.rho[i] + dt * k1.rho[i]);
    u2.m[i] = 0.5 * u0.m[i] + 0.5 * (u1.m[i] + dt * k1.m[i]);
  }
  enforce_admissible(u2, cfg);
  check_finite(u2, s.time + dt);
  return {Field(cfg.grid, 1, std::move(u2.rho)), Field(cfg.grid, 1, std::move(u2.m)), s.time + dt};
}

EulerState step(const EulerState& s, const SimConfig& cfg) { return step(s, cfg, stable_dt(s, cfg)); }

// ---------------------------------------------------------------------------
// Trajectories

std::vector<double> Trajectory::energy_series() const {
  std::vector<double> e;
  for (const auto& r : records) e.push_back(r.energy);
  return e;
}

std::vector<double> Trajectory::time_series() const {
  std::vector<double> t;
  for (const auto& r : records) t.push_back(r.time);
  return t;
}

double Trajectory::max_mass_drift() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double scale = std::abs(records[i - 1].mass);
    if (scale > 0.0) worst = std::max(worst, std::abs(records[i].mass - records[i - 1].mass) / scale);
  }
  return worst;
}

double Trajectory::max_momentum_drift() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double scale = std::max(std::abs(records[i - 1].momentum), records[i - 1].momentum_scale);
    if (scale > 0.0) worst = std::max(worst, std::abs(records[i].momentum - records[i - 1].momentum) / scale);
  }
  return worst;
}

double Trajectory::max_energy_rise() const {
  if (records.empty() || records.front().energy == 0.0) return 0.0;
  double worst = -kInfinity;
  for (std::size_t i = 1; i < records.size(); ++i) {
    worst = std::max(worst, records[i].energy - records[i - 1].energy);
  }
  return records.size() < 2 ? 0.0 : worst / records.front().energy;
}

EulerState initial_state(const SimConfig& cfg) {
  cfg.validate();
  const Field rho = generate(cfg.grid, cfg.rho0, cfg.seed);
  const Field v = generate(cfg.grid, cfg.v0, cfg.seed + 1);
  for (double r : rho.data()) require(r >= 0.0, "initial density must be nonnegative");
  return make_state(rho, v, 0.0);
}

namespace {

StepRecord record_of(const EulerState& s, double dt, const PressureLaw& law) {
  return {s.time, dt, total_mass(s), total_momentum(s), momentum_scale(s), energy(s, law)};
}

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
  EulerState state = initial_state(cfg);
  Trajectory traj;
  traj.law = cfg.law;
  traj.snapshots.push_back(state);
  traj.records.push_back(record_of(state, 0.0, cfg.law));

  const double cadence = cfg.snapshot_every > 0.0 ? std::min(cfg.snapshot_every, cfg.t_end) : cfg.t_end;
  long snapshot_index = 1;
  long steps = 0;
  while (true) {
    const double target = std::min(cfg.t_end, snapshot_index * cadence);
    double dt = stable_dt(state, cfg);
    bool lands = false;
    if (state.time + dt >= target * (1.0 - 1e-14)) {
      dt = target - state.time;
      lands = true;
    }
    if (dt <= 0.0) {
      lands = true;
    } else {
      state = step(state, cfg, dt);
      if (lands) state.time = target;
      traj.records.push_back(record_of(state, dt, cfg.law));
      if (++steps > cfg.max_steps) throw NumericalError("max_steps exceeded before t_end");
    }
    if (lands) {
      traj.snapshots.push_back(state);
      if (target >= cfg.t_end) break;
      ++snapshot_index;
    }
  }
  return traj;
}

Grid snapshot_grid(const Trajectory& traj) {
  require(traj.snapshots.size() >= 3, "need at least three snapshots");
  const auto& snaps = traj.snapshots;
  const double dt = snaps[1].time - snaps[0].time;
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double gap = snaps[i].time - snaps[i - 1].time;
    require(std::abs(gap - dt) <= 1e-9 * dt, "snapshots are not uniformly spaced");
  }
  const Grid& g = snaps.front().rho.grid();
  return make_spacetime_grid(1, g.n, g.length, static_cast<int>(snaps.size()), dt, snaps.front().time);
}

namespace {

Field stack(const Trajectory& traj, bool density) {
  const Grid g = snapshot_grid(traj);
  std::vector<Field> slices;
  for (const auto& s : traj.snapshots) slices.push_back(density ? s.rho : s.m);
  return stack_slices(slices, g.dt, g.t0);
}

}  // namespace

Field stacked_density(const Trajectory& traj) { return stack(traj, true); }
Field stacked_momentum(const Trajectory& traj) { return stack(traj, false); }

nlohmann::json to_json(const SimConfig& c) {
  return {
      {"n", c.grid.n},
      {"length", c.grid.length},
      {"gamma", c.law.gamma},
      {"kappa", c.law.kappa},
      {"cfl", c.cfl},
      {"t_end", c.t_end},
      {"flux", c.flux == Flux::llf ? "llf" : "hll"},
      {"rho0", describe(c.rho0)},
      {"v0", describe(c.v0)},
      {"seed", c.seed},
      {"snapshot_every", c.snapshot_every},
      {"density_floor", c.density_floor},
  };
}

void dump_trajectory(const Trajectory& traj, const SimConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const EulerState& s = traj.snapshots[k];
    const Field v = velocity(s);
    Table t{{"x", "rho", "v", "m"}, {}};
    const double dx = s.rho.grid().dx();
    for (std::size_t i = 0; i < s.rho.data().size(); ++i) {
      t.add_row({static_cast<double>(i) * dx, s.rho.data()[i], v.data()[i], s.m.data()[i]});
    }
    std::ostringstream name;
    name << "snapshot_" << std::setw(4) << std::setfill('0') << k << ".csv";
    export_csv(t, dir / name.str());
  }
  nlohmann::json snapshots = nlohmann::json::array();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) snapshots.push_back(traj.snapshots[k].time);
  nlohmann::json manifest{
      {"config", to_json(cfg)},
      {"snapshot_times", snapshots},
      {"energy", {{"t", traj.time_series()}, {"E", traj.energy_series()}}},
      {"conservation",
       {{"steps", traj.records.size() - 1},
        {"max_mass_drift", traj.max_mass_drift()},
        {"max_momentum_drift", traj.max_momentum_drift()},
        {"max_energy_rise", traj.max_energy_rise()}}},
  };
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + (dir / "manifest.json").string());
}

}  // namespace onsager
