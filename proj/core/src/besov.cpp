#include "onsager/besov.hpp"

#include <algorithm>
#include <cmath>

#include "onsager/error.hpp"
#include "onsager/fit.hpp"
#include "onsager/parallel.hpp"
#include "onsager/summation.hpp"

namespace onsager {

void BesovParams::validate() const {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(q >= 1.0, "q must be >= 1");
  if (beta) {
    require(*beta < 1.0, "beta must be below 1");
    require(*beta >= alpha, "beta must be >= alpha");
  }
  if (p) require(*p >= 1.0, "p must be >= 1");
}

double Shift::magnitude(const Grid& grid) const { return std::hypot(x, y) * grid.dx(); }

std::vector<Shift> dyadic_shifts(const Grid& grid, double min_length, double max_length) {
  std::vector<Shift> out;
  for (int k = 1; k < grid.n; k *= 2) {
    const double len = k * grid.dx();
    if (len < min_length * (1 - 1e-12) || len > max_length * (1 + 1e-12)) continue;
    out.push_back({k, 0});
    if (grid.dim == 2) out.push_back({0, k});
  }
  if (grid.dim == 2) {
    for (int k = 1; k < grid.n; k *= 2) {
      const double len = std::sqrt(2.0) * k * grid.dx();
      if (len < min_length * (1 - 1e-12) || len > max_length * (1 + 1e-12)) continue;
      out.push_back({k, k});
    }
  }
  return out;
}

std::vector<Shift> default_shifts(const Grid& grid) {
  return dyadic_shifts(grid, 4.0 * grid.dx(), grid.length / 8.0);
}

std::vector<int> default_time_shifts(const Grid& grid) {
  require(grid.has_time(), "time shifts need a time axis");
  std::vector<int> out;
  for (int k = 4; k * grid.dt <= grid.duration() / 8.0 * (1 + 1e-12); k *= 2) out.push_back(k);
  return out;
}

Field translate(const Field& field, Shift shift) {
  const Grid& g = field.grid();
  require(g.dim == 2 || shift.y == 0, "y shift on a 1-D grid");
  const int n = g.n;
  const int comps = field.components();
  const std::size_t points = g.points();
  std::vector<double> out(field.data().size());
  auto d = field.data();
  auto wrap = [n](int i) { return static_cast<std::size_t>(((i % n) + n) % n); };
  for (int t = 0; t < std::max(g.nt, 1); ++t) {
    const std::size_t base = static_cast<std::size_t>(t) * points;
    for (std::size_t p = 0; p < points; ++p) {
      std::size_t src;
      if (g.dim == 1) {
        src = wrap(static_cast<int>(p) - shift.x);
      } else {
        src = wrap(static_cast<int>(p / n) - shift.x) * n + wrap(static_cast<int>(p % n) - shift.y);
      }
      for (int c = 0; c < comps; ++c) out[(base + p) * comps + c] = d[(base + src) * comps + c];
    }
  }
  return Field(g, comps, std::move(out));
}

namespace {

void check_shift(const Grid& g, Shift s) {
  require(g.dim == 2 || s.y == 0, "y shift on a 1-D grid");
  require(s.x != 0 || s.y != 0, "zero shift");
  require(s.magnitude(g) <= g.length / 4.0 * (1 + 1e-12), "shift longer than a quarter period");
}

// (sum of |v|^q, sorted ascending, times weight)^(1/q), or max |v|.
double sorted_norm(std::vector<double> v, double q, double weight) {
  if (v.empty()) return 0.0;
  if (std::isinf(q)) return *std::max_element(v.begin(), v.end());
  for (double& x : v) x = std::pow(x, q);
  std::sort(v.begin(), v.end());
  return std::pow(pairwise_sum(v) * weight, 1.0 / q);
}

// Pointwise |f(t, x - y) - f(t', x)| over one slice pair.
std::vector<double> slice_difference(const Field& f, int t_shifted, int t_base, Shift s) {
  const Grid& g = f.grid();
  const int n = g.n;
  const int comps = f.components();
  auto wrap = [n](int i) { return static_cast<std::size_t>(((i % n) + n) % n); };
  std::vector<double> out(g.points());
  for (std::size_t p = 0; p < out.size(); ++p) {
    std::size_t src;
    if (g.dim == 1) {
      src = wrap(static_cast<int>(p) - s.x);
    } else {
      src = wrap(static_cast<int>(p / n) - s.x) * n + wrap(static_cast<int>(p % n) - s.y);
    }
    double acc = 0.0;
    for (int c = 0; c < comps; ++c) {
      const double v = f.at(t_shifted, src, c) - f.at(t_base, p, c);
      acc += v * v;
    }
    out[p] = std::sqrt(acc);
  }
  return out;
}

void finish(BesovEstimate& e, double alpha) {
  e.seminorm = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    const auto& s = e.samples[i];
    const double value = s.norm / std::pow(s.length, alpha);
    if (i == 0 || value > e.seminorm) {
      e.seminorm = value;
      e.worst = s;
    }
    if (s.norm > 0.0) {
      lx.push_back(std::log(s.length));
      ly.push_back(std::log(s.norm));
    }
  }
  // Distinct lengths are needed for a slope.
  bool distinct = false;
  for (double x : lx) distinct = distinct || x != lx.front();
  if (lx.size() >= 2 && distinct) {
    const LineFit fit = least_squares(lx, ly);
    e.fitted_alpha = fit.slope;
    e.fit_r2 = fit.r2;
  }
}

}  // namespace

double difference_norm(const Field& field, Shift shift, double q) {
  const Grid& g = field.grid();
  require(!g.has_time(), "difference_norm expects a space-only field");
  require(q >= 1.0, "q must be >= 1");
  require(g.dim == 2 || shift.y == 0, "y shift on a 1-D grid");
  return sorted_norm(slice_difference(field, 0, 0, shift), q, g.cell_volume());
}

BesovEstimate besov_seminorm_space(const Field& field, double alpha, double q, std::span<const Shift> shifts) {
  const Grid& g = field.grid();
  BesovParams{alpha, q, {}, {}}.validate();
  require(!g.has_time(), "space semi-norm expects a space-only field");
  require(!shifts.empty(), "shift set is empty");
  for (const Shift& s : shifts) check_shift(g, s);
  BesovEstimate e;
  e.samples.resize(shifts.size());
  parallel_for(shifts.size(), [&](std::size_t i) {
    e.samples[i] = {shifts[i].magnitude(g), difference_norm(field, shifts[i], q), shifts[i], 0};
  });
  finish(e, alpha);
  return e;
}

SpaceTimeBesovEstimate besov_seminorm_spacetime(const Field& field, const BesovParams& params,
                                                std::span<const int> time_shifts,
                                                std::span<const Shift> space_shifts) {
  params.validate();
  require(params.beta.has_value() && params.p.has_value(), "space-time estimate needs beta and p");
  const Grid& g = field.grid();
  require(g.has_time(), "space-time semi-norm needs a time axis");
  require(!time_shifts.empty() && !space_shifts.empty(), "shift set is empty");
  for (int h : time_shifts) {
    require(h >= 1 && h < g.nt, "time shift outside the sampled interval");
  }
  for (const Shift& s : space_shifts) check_shift(g, s);
  const double p = *params.p;
  const double q = params.q;

  SpaceTimeBesovEstimate out;
  out.time.samples.resize(time_shifts.size());
  parallel_for(time_shifts.size(), [&](std::size_t i) {
    const int h = time_shifts[i];
    const int valid = g.nt - h;
    std::vector<double> per_time(valid);
    for (int t = 0; t < valid; ++t) {
      per_time[t] = sorted_norm(slice_difference(field, t + h, t, Shift{}), q, g.cell_volume());
    }
    const double weight = g.duration() / valid;
    out.time.samples[i] = {h * g.dt, sorted_norm(std::move(per_time), p, weight), Shift{}, h};
  });
  finish(out.time, *params.beta);

  out.space.samples.resize(space_shifts.size());
  parallel_for(space_shifts.size(), [&](std::size_t i) {
    std::vector<double> per_time(g.nt);
    for (int t = 0; t < g.nt; ++t) {
      per_time[t] = sorted_norm(slice_difference(field, t, t, space_shifts[i]), q, g.cell_volume());
    }
    out.space.samples[i] = {space_shifts[i].magnitude(g), sorted_norm(std::move(per_time), p, g.dt),
                            space_shifts[i], 0};
  });
  finish(out.space, params.alpha);
  return out;
}

HolderFit holder_exponent_fit(const Field& field, double q) {
  const auto shifts = default_shifts(field.grid());
  require(!shifts.empty(), "grid too coarse for the shift window [4 dx, length/8]");
  const BesovEstimate e = besov_seminorm_space(field, 0.5, q, shifts);
  HolderFit fit;
  fit.samples = e.samples;
  if (!e.fitted_alpha) {
    fit.no_scaling = true;
    return fit;
  }
  fit.raw_slope = *e.fitted_alpha;
  fit.r2 = e.fit_r2;
  fit.alpha = std::clamp(fit.raw_slope, 0.0, 1.0);
  fit.out_of_range = fit.alpha != fit.raw_slope;
  return fit;
}

Table difference_table(std::span<const ShiftSample> samples) {
  Table t{{"shift_x", "shift_y", "time_steps", "length", "norm"}, {}};
  for (const auto& s : samples) {
    t.add_row({std::int64_t{s.shift.x}, std::int64_t{s.shift.y}, std::int64_t{s.time_steps}, s.length, s.norm});
  }
  return t;
}

}  // namespace onsager
