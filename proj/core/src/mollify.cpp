#include "onsager/mollify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "onsager/error.hpp"
#include "onsager/fft.hpp"
#include "onsager/parallel.hpp"

namespace onsager {

namespace {

double bump(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

// omega_dim * int_0^1 r^(dim-1) exp(-1/(1-r^2)) dr by composite Simpson. The
// integrand is C-infinity with all derivatives vanishing at r = 1, so the rule
// converges far faster than its nominal order.
double unit_bump_integral(int dim) {
  constexpr int intervals = 1 << 16;
  const double h = 1.0 / intervals;
  auto f = [dim](double r) { return std::pow(r, dim - 1) * bump(r * r); };
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  constexpr std::array<double, 4> surface{0.0, 2.0, 2.0 * std::numbers::pi, 4.0 * std::numbers::pi};
  return surface[dim] * s * h / 3.0;
}

bool too_small(double epsilon, double spacing) { return epsilon < 2.0 * spacing * (1.0 - 1e-12); }

std::size_t wrap(int i, int n) { return static_cast<std::size_t>(((i % n) + n) % n); }

std::size_t shifted_point(std::size_t point, int dx, int dy, int dim, int n) {
  if (dim == 1) return wrap(static_cast<int>(point) - dx, n);
  const int i = static_cast<int>(point / n);
  const int j = static_cast<int>(point % n);
  return wrap(i - dx, n) * n + wrap(j - dy, n);
}

// Real Fourier multiplier of the taps with time offset s on the half spectrum.
std::vector<double> tap_multiplier(const Mollifier& m, int s) {
  const Grid& g = m.grid();
  std::vector<double> kernel(g.points(), 0.0);
  for (const Tap& tap : m.taps()) {
    if (tap.t != s) continue;
    const std::size_t idx = g.dim == 1 ? wrap(tap.x, g.n) : wrap(tap.x, g.n) * g.n + wrap(tap.y, g.n);
    kernel[idx] += tap.weight;
  }
  auto spectrum = fft::forward(kernel, g.dim, g.n);
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i].real();
  return out;
}

}  // namespace

double mollifier_constant(int dim) {
  require(dim >= 1 && dim <= 3, "mollifier dimension must be 1, 2 or 3");
  static std::once_flag once;
  static std::array<double, 4> c{};
  std::call_once(once, [] {
    for (int d = 1; d <= 3; ++d) c[d] = 1.0 / unit_bump_integral(d);
  });
  return c[dim];
}

double kernel_value(std::span<const double> x, double epsilon) {
  require(epsilon > 0.0, "mollifier scale must be positive");
  const int dim = static_cast<int>(x.size());
  double r2 = 0.0;
  for (double v : x) r2 += (v / epsilon) * (v / epsilon);
  if (r2 >= 1.0) return 0.0;
  return mollifier_constant(dim) * bump(r2) / std::pow(epsilon, dim);
}

double kernel_value(double x, double epsilon) { return kernel_value(std::span<const double>(&x, 1), epsilon); }

// ---------------------------------------------------------------------------
// Mollifier

Mollifier Mollifier::space(const Grid& grid, double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0, "mollifier scale must be positive");
  require(!too_small(epsilon, grid.dx()), "epsilon below 2 dx: kernel under-resolved");
  require(epsilon < grid.length / 2, "epsilon must be below half the period");
  Mollifier m(grid.space_only(), epsilon, grid.dim);
  m.build();
  return m;
}

Mollifier Mollifier::spacetime(const Grid& grid, double epsilon) {
  require(grid.has_time(), "space-time mollification needs a time axis");
  require(std::isfinite(epsilon) && epsilon > 0.0, "mollifier scale must be positive");
  require(!too_small(epsilon, std::max(grid.dx(), grid.dt)),
          "epsilon below 2 max(dx, dt): kernel under-resolved");
  require(epsilon < grid.length / 2, "epsilon must be below half the period");
  require(epsilon < grid.duration() / 2, "epsilon must be below T/2: no interior time window left");
  Mollifier m(grid, epsilon, grid.dim + 1);
  m.build();
  return m;
}

void Mollifier::build() {
  const double dx = grid_.dx();
  const int rx = static_cast<int>(std::floor(epsilon_ / dx));
  const int rt = is_spacetime() ? static_cast<int>(std::floor(epsilon_ / grid_.dt)) : 0;
  const int ry = grid_.dim == 2 ? rx : 0;
  std::size_t centre = 0;
  double total = 0.0;
  for (int s = -rt; s <= rt; ++s) {
    for (int i = -rx; i <= rx; ++i) {
      for (int j = -ry; j <= ry; ++j) {
        const double ts = is_spacetime() ? s * grid_.dt / epsilon_ : 0.0;
        const double xs = i * dx / epsilon_;
        const double ys = j * dx / epsilon_;
        const double r2 = ts * ts + xs * xs + ys * ys;
        if (r2 >= 1.0) continue;
        if (s == 0 && i == 0 && j == 0) centre = taps_.size();
        const double w = bump(r2);
        taps_.push_back({s, i, j, w});
        total += w;
        reach_x_ = std::max({reach_x_, std::abs(i), std::abs(j)});
        reach_t_ = std::max(reach_t_, std::abs(s));
      }
    }
  }
  for (Tap& tap : taps_) tap.weight /= total;
  // The centre goes last and absorbs the rounding defect: with S the sum of
  // the other weights, 1 - S is exact and S + (1 - S) rounds to 1.
  std::rotate(taps_.begin() + centre, taps_.begin() + centre + 1, taps_.end());
  double others = 0.0;
  for (std::size_t k = 0; k + 1 < taps_.size(); ++k) others += taps_[k].weight;
  taps_.back().weight = 1.0 - others;
  if (mass() != 1.0) throw NumericalError("mollifier weights could not be normalized exactly");
}

double Mollifier::mass() const {
  double s = 0.0;
  for (const Tap& tap : taps_) s += tap.weight;
  return s;
}

double Mollifier::symbol(int kx, int ky) const {
  require(!is_spacetime(), "symbol is defined for space kernels");
  const double two_pi_over_n = 2.0 * std::numbers::pi / grid_.n;
  double s = 0.0;
  for (const Tap& tap : taps_) s += tap.weight * std::cos(two_pi_over_n * (kx * tap.x + ky * tap.y));
  return s;
}

bool Mollifier::prefers_direct() const noexcept { return 2 * std::max(reach_x_, reach_t_) + 1 <= 33; }

// ---------------------------------------------------------------------------
// Convolution

namespace {

bool use_direct(const Mollifier& m, ConvolutionPath path) {
  if (path == ConvolutionPath::automatic) return m.prefers_direct();
  return path == ConvolutionPath::direct;
}

// Values are convolved as r + K * (f - r) with a per-channel reference r, so
// a constant input is reproduced bit for bit on either path.
std::vector<double> channel_reference(const Field& f) {
  std::vector<double> r(f.components());
  for (int c = 0; c < f.components(); ++c) r[c] = f.data()[c];
  return r;
}

}  // namespace

Field mollify_space(const Field& field, double epsilon, ConvolutionPath path) {
  const Grid& g = field.grid();
  const Mollifier m = Mollifier::space(g, epsilon);
  const int slices = std::max(g.nt, 1);
  const int comps = field.components();
  const std::size_t points = g.points();
  const auto ref = channel_reference(field);
  std::vector<double> out(field.data().size());
  const bool direct = use_direct(m, path);
  const std::vector<double> multiplier = direct ? std::vector<double>{} : tap_multiplier(m, 0);

  parallel_for(static_cast<std::size_t>(slices) * comps, [&](std::size_t job) {
    const int t = static_cast<int>(job / comps);
    const int c = static_cast<int>(job % comps);
    const double r = ref[c];
    auto src = field.channel_slice(t, c);
    for (double& v : src) v -= r;
    std::vector<double> conv;
    if (direct) {
      conv.assign(points, 0.0);
      for (std::size_t p = 0; p < points; ++p) {
        double acc = 0.0;
        for (const Tap& tap : m.taps()) acc += tap.weight * src[shifted_point(p, tap.x, tap.y, g.dim, g.n)];
        conv[p] = acc;
      }
    } else {
      auto spec = fft::forward(src, g.dim, g.n);
      for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= multiplier[k];
      conv = fft::inverse(spec, g.dim, g.n);
    }
    double* dst = out.data() + static_cast<std::size_t>(t) * points * comps;
    for (std::size_t p = 0; p < points; ++p) dst[p * comps + c] = r + conv[p];
  });
  return Field(g, comps, std::move(out));
}

std::pair<int, int> interior_window(const Grid& grid, double epsilon) {
  require(grid.has_time(), "interior window needs a time axis");
  require(epsilon > 0.0, "mollifier scale must be positive");
  const int reach = static_cast<int>(std::ceil(epsilon / grid.dt - 1e-12));
  const int count = grid.nt - 2 * reach;
  require(count >= 1, "epsilon must be below T/2: no interior time window left");
  return {reach, count};
}

Field mollify_spacetime(const Field& field, double epsilon, ConvolutionPath path) {
  const Grid& g = field.grid();
  const Mollifier m = Mollifier::spacetime(g, epsilon);
  const auto [first, count] = interior_window(g, epsilon);
  const int comps = field.components();
  const std::size_t points = g.points();
  const auto ref = channel_reference(field);
  const Grid out_grid = g.time_window(first, count);
  std::vector<double> out(out_grid.samples() * comps);
  const int rt = m.time_reach();

  if (use_direct(m, path)) {
    parallel_for(static_cast<std::size_t>(count) * comps, [&](std::size_t job) {
      const int j = static_cast<int>(job / comps);
      const int c = static_cast<int>(job % comps);
      const double r = ref[c];
      double* dst = out.data() + static_cast<std::size_t>(j) * points * comps;
      for (std::size_t p = 0; p < points; ++p) {
        double acc = 0.0;
        for (const Tap& tap : m.taps()) {
          const int t = first + j - tap.t;
          acc += tap.weight * (field.at(t, shifted_point(p, tap.x, tap.y, g.dim, g.n), c) - r);
        }
        dst[p * comps + c] = r + acc;
      }
    });
    return Field(out_grid, comps, std::move(out));
  }

  std::vector<std::vector<double>> multipliers(2 * rt + 1);
  parallel_for(multipliers.size(), [&](std::size_t s) {
    multipliers[s] = tap_multiplier(m, static_cast<int>(s) - rt);
  });
  for (int c = 0; c < comps; ++c) {
    const double r = ref[c];
    std::vector<std::vector<fft::Complex>> spectra(g.nt);
    parallel_for(g.nt, [&](std::size_t t) {
      auto src = field.channel_slice(static_cast<int>(t), c);
      for (double& v : src) v -= r;
      spectra[t] = fft::forward(src, g.dim, g.n);
    });
    parallel_for(count, [&](std::size_t jj) {
      const int j = static_cast<int>(jj);
      std::vector<fft::Complex> acc(spectra.front().size());
      for (int s = -rt; s <= rt; ++s) {
        const auto& mult = multipliers[s + rt];
        const auto& src = spectra[first + j - s];
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += mult[k] * src[k];
      }
      auto conv = fft::inverse(acc, g.dim, g.n);
      double* dst = out.data() + jj * points * comps;
      for (std::size_t p = 0; p < points; ++p) dst[p * comps + c] = r + conv[p];
    });
  }
  return Field(out_grid, comps, std::move(out));
}

Field gradient(const Field& field, int axis) {
  const Grid& g = field.grid();
  require(axis >= 0 && axis < g.dim, "gradient axis out of range");
  const int slices = std::max(g.nt, 1);
  const int comps = field.components();
  const std::size_t points = g.points();
  std::vector<double> out(field.data().size());
  parallel_for(static_cast<std::size_t>(slices) * comps, [&](std::size_t job) {
    const int t = static_cast<int>(job / comps);
    const int c = static_cast<int>(job % comps);
    auto d = fft::derivative(field.channel_slice(t, c), g.dim, g.n, g.length, axis);
    double* dst = out.data() + static_cast<std::size_t>(t) * points * comps;
    for (std::size_t p = 0; p < points; ++p) dst[p * comps + c] = d[p];
  });
  return Field(g, comps, std::move(out));
}

Field time_derivative(const Field& field) {
  const Grid& g = field.grid();
  require(g.has_time() && g.nt >= 3, "time derivative needs at least three time samples");
  const Grid out_grid = g.time_window(1, g.nt - 2);
  const std::size_t len = g.points() * field.components();
  std::vector<double> out(out_grid.samples() * field.components());
  const auto d = field.data();
  const double inv = 1.0 / (2.0 * g.dt);
  for (int j = 1; j < g.nt - 1; ++j) {
    for (std::size_t i = 0; i < len; ++i) {
      out[(j - 1) * len + i] = (d[(j + 1) * len + i] - d[(j - 1) * len + i]) * inv;
    }
  }
  return Field(out_grid, field.components(), std::move(out));
}

}  // namespace onsager
