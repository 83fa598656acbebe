#include "onsager/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "onsager/error.hpp"
#include "onsager/fft.hpp"
#include "onsager/summation.hpp"

namespace onsager {

// ---------------------------------------------------------------------------
// Grid

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

std::size_t Grid::points() const noexcept {
  std::size_t p = 1;
  for (int a = 0; a < dim; ++a) p *= static_cast<std::size_t>(n);
  return p;
}

std::size_t Grid::samples() const noexcept {
  return static_cast<std::size_t>(std::max(nt, 1)) * points();
}

double Grid::cell_volume() const noexcept { return std::pow(dx(), dim); }

Grid Grid::space_only() const {
  Grid g = *this;
  g.nt = 0;
  g.dt = 0.0;
  g.t0 = 0.0;
  return g;
}

Grid Grid::time_window(int first, int count) const {
  require(has_time(), "time window requested on a space-only grid");
  require(first >= 0 && count >= 1 && first + count <= nt, "time window out of range");
  Grid g = *this;
  g.t0 = time(first);
  g.nt = count;
  return g;
}

namespace {

void validate_grid(const Grid& g) {
  require(g.dim == 1 || g.dim == 2, "grid dimension must be 1 or 2");
  require(g.n >= 8 && is_power_of_two(g.n), "points per axis must be a power of two >= 8");
  require(std::isfinite(g.length) && g.length > 0.0, "domain length must be positive");
  require(g.nt >= 0, "time sample count must be nonnegative");
  if (g.nt > 0) {
    require(std::isfinite(g.dt) && g.dt > 0.0, "time step must be positive");
    require(std::isfinite(g.t0), "time origin must be finite");
  }
}

}  // namespace

Grid make_grid(int dim, int n, double length, int nt, double t_end) {
  Grid g{dim, n, length, nt, 0.0, 0.0};
  if (nt > 0) {
    require(std::isfinite(t_end) && t_end > 0.0, "final time must be positive");
    g.dt = t_end / nt;
  }
  validate_grid(g);
  return g;
}

Grid make_spacetime_grid(int dim, int n, double length, int nt, double dt, double t0) {
  require(nt >= 1, "space-time grid needs at least one time sample");
  Grid g{dim, n, length, nt, dt, t0};
  validate_grid(g);
  return g;
}

// ---------------------------------------------------------------------------
// Field

Field::Field(Grid grid, int components, std::vector<double> data)
    : grid_(grid), components_(components), data_(std::move(data)) {
  validate_grid(grid_);
  require(components_ >= 1, "field needs at least one component");
  require(data_.size() == grid_.samples() * static_cast<std::size_t>(components_),
          "field data length does not match grid");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw NumericalError("non-finite field sample at flat index " + std::to_string(i));
    }
  }
}

Field Field::constant(const Grid& grid, double value, int components) {
  return Field(grid, components,
               std::vector<double>(grid.samples() * static_cast<std::size_t>(components), value));
}

std::span<const double> Field::slice(int t) const {
  require(t >= 0 && t < std::max(grid_.nt, 1), "time slice out of range");
  const std::size_t len = grid_.points() * components_;
  return std::span<const double>(data_).subspan(static_cast<std::size_t>(t) * len, len);
}

std::vector<double> Field::channel_slice(int t, int component) const {
  require(component >= 0 && component < components_, "component out of range");
  auto s = slice(t);
  std::vector<double> out(grid_.points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[i * components_ + component];
  return out;
}

Field Field::channel(int component) const {
  require(component >= 0 && component < components_, "component out of range");
  if (components_ == 1) return *this;
  std::vector<double> out(grid_.samples());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * components_ + component];
  return Field(grid_, 1, std::move(out));
}

Field Field::time_slice(int t) const {
  auto s = slice(t);
  return Field(grid_.space_only(), components_, std::vector<double>(s.begin(), s.end()));
}

Field Field::window(int first, int count) const {
  Grid g = grid_.time_window(first, count);
  const std::size_t len = grid_.points() * components_;
  auto begin = data_.begin() + static_cast<std::ptrdiff_t>(first * len);
  return Field(g, components_, std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(count * len)));
}

void require_same_grid(const Field& a, const Field& b, const char* operation) {
  if (!(a.grid() == b.grid())) {
    throw InvalidArgument(std::string(operation) + ": fields live on different grids");
  }
}

namespace {

template <class Op>
Field combine(const Field& a, const Field& b, const char* name, Op op) {
  require_same_grid(a, b, name);
  require(a.components() == b.components(), std::string(name) + ": component counts differ");
  auto x = a.data();
  auto y = b.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(x[i], y[i]);
  return Field(a.grid(), a.components(), std::move(out));
}

}  // namespace

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, "field sum", [](double x, double y) { return x + y; });
}
Field operator-(const Field& a, const Field& b) {
  return combine(a, b, "field difference", [](double x, double y) { return x - y; });
}
Field operator*(const Field& a, const Field& b) {
  return combine(a, b, "field product", [](double x, double y) { return x * y; });
}
Field operator*(double scale, const Field& f) {
  return transform(f, [scale](double x) { return scale * x; });
}

Field transform(const Field& f, const std::function<double(double)>& op) {
  auto x = f.data();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(x[i]);
  return Field(f.grid(), f.components(), std::move(out));
}

Field stack_components(std::span<const Field> channels) {
  require(!channels.empty(), "cannot stack zero fields");
  const Grid& g = channels.front().grid();
  const int c = static_cast<int>(channels.size());
  for (const auto& ch : channels) {
    require_same_grid(channels.front(), ch, "stack_components");
    require(ch.components() == 1, "stack_components expects scalar fields");
  }
  std::vector<double> out(g.samples() * c);
  for (int k = 0; k < c; ++k) {
    auto d = channels[k].data();
    for (std::size_t i = 0; i < d.size(); ++i) out[i * c + k] = d[i];
  }
  return Field(g, c, std::move(out));
}

Field stack_slices(std::span<const Field> slices, double dt, double t0) {
  require(!slices.empty(), "cannot stack zero slices");
  const Field& first = slices.front();
  require(!first.grid().has_time(), "stack_slices expects space-only fields");
  std::vector<double> out;
  out.reserve(first.data().size() * slices.size());
  for (const auto& s : slices) {
    require_same_grid(first, s, "stack_slices");
    require(s.components() == first.components(), "stack_slices: component counts differ");
    out.insert(out.end(), s.data().begin(), s.data().end());
  }
  const Grid& g = first.grid();
  return Field(make_spacetime_grid(g.dim, g.n, g.length, static_cast<int>(slices.size()), dt, t0),
               first.components(), std::move(out));
}

// ---------------------------------------------------------------------------
// Norms

namespace {

std::vector<double> magnitudes(std::span<const double> interleaved, int components) {
  std::vector<double> m(interleaved.size() / components);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (components == 1) {
      m[i] = std::abs(interleaved[i]);
    } else {
      double s = 0.0;
      for (int c = 0; c < components; ++c) {
        const double v = interleaved[i * components + c];
        s += v * v;
      }
      m[i] = std::sqrt(s);
    }
  }
  return m;
}

/// (sum |m|^r * weight)^(1/r), or max |m| when r is infinite.
double weighted_norm(std::vector<double> m, double r, double weight) {
  if (std::isinf(r)) return m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
  for (double& v : m) v = std::pow(v, r);
  return std::pow(pairwise_sum(m) * weight, 1.0 / r);
}

void check_exponent(double r, const char* name) {
  if (!(r >= 1.0)) throw InvalidArgument(std::string("norm exponent ") + name + " must be >= 1");
}

}  // namespace

double lp_norm(const Field& f, double r) {
  check_exponent(r, "r");
  const Grid& g = f.grid();
  const double weight = g.cell_volume() * (g.has_time() ? g.dt : 1.0);
  return weighted_norm(magnitudes(f.data(), f.components()), r, weight);
}

double mixed_norm(const Field& f, double p, double q) {
  check_exponent(p, "p");
  check_exponent(q, "q");
  const Grid& g = f.grid();
  const int slices = std::max(g.nt, 1);
  std::vector<double> per_slice(slices);
  for (int t = 0; t < slices; ++t) {
    per_slice[t] = weighted_norm(magnitudes(f.slice(t), f.components()), q, g.cell_volume());
  }
  if (!g.has_time()) return per_slice.front();
  return weighted_norm(std::move(per_slice), p, g.dt);
}

// ---------------------------------------------------------------------------
// Specs

namespace spec {
FieldSpec constant(double value) { return {ConstantSpec{value}}; }
FieldSpec fourier_mode(int kx, double amplitude, double phase, int ky, int kt) {
  return {FourierModeSpec{kx, ky, kt, amplitude, phase}};
}
FieldSpec holder(double alpha, std::uint64_t seed, int modes, SpectralAxis axis) {
  return {HolderSpec{alpha, seed, modes, axis}};
}
FieldSpec indicator(double lower, double upper) { return {IndicatorSpec{lower, upper}}; }
FieldSpec riemann(double left, double right, double jump) { return {RiemannSpec{left, right, jump}}; }
FieldSpec vacuum_bump(double floor, double center, double width) {
  return {VacuumBumpSpec{floor, center, width}};
}
FieldSpec sum(std::vector<FieldSpec> terms) {
  return {CompositeSpec{CompositeSpec::Op::sum, std::move(terms)}};
}
FieldSpec product(std::vector<FieldSpec> terms) {
  return {CompositeSpec{CompositeSpec::Op::product, std::move(terms)}};
}
}  // namespace spec

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const FieldSpec& s, const Grid& grid) {
  std::visit(
      Overloaded{
          [](const ConstantSpec& c) { require(finite(c.value), "constant value must be finite"); },
          [&](const FourierModeSpec& m) {
            require(finite(m.amplitude) && finite(m.phase), "Fourier mode parameters must be finite");
            require(grid.dim == 2 || m.ky == 0, "fourier_mode: ky != 0 on a 1-D grid");
            require(grid.has_time() || m.kt == 0, "fourier_mode: kt != 0 on a grid without time axis");
          },
          [&](const HolderSpec& h) {
            require(h.alpha > 0.0 && h.alpha < 1.0, "holder exponent must lie in (0, 1)");
            require(h.modes >= 0, "holder mode count must be nonnegative");
            require(h.axis == SpectralAxis::space || grid.has_time(),
                    "holder: time axis requested on a grid without time axis");
            if (h.axis == SpectralAxis::time) {
              require(grid.nt >= 8, "holder: time synthesis needs at least 8 time samples");
            }
          },
          [&](const IndicatorSpec& i) {
            require(finite(i.lower) && finite(i.upper) && i.lower < i.upper,
                    "indicator interval must satisfy lower < upper");
          },
          [](const RiemannSpec& r) {
            require(finite(r.left) && finite(r.right) && finite(r.jump), "riemann states must be finite");
          },
          [](const VacuumBumpSpec& v) {
            require(finite(v.floor) && v.floor >= 0.0, "vacuum_bump floor must be >= 0");
            require(v.floor <= 1.0, "vacuum_bump floor must not exceed the background level 1");
            require(finite(v.center), "vacuum_bump center must be finite");
            require(finite(v.width) && v.width > 0.0, "vacuum_bump width must be positive");
          },
          [&](const CompositeSpec& c) {
            require(!c.terms.empty(), "composite spec needs at least one term");
            for (const auto& t : c.terms) validate(t, grid);
          },
      },
      s.kind);
}

std::string describe(const FieldSpec& s) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const ConstantSpec& c) { os << "constant(" << c.value << ")"; },
                 [&](const FourierModeSpec& m) {
                   os << "fourier_mode(kx=" << m.kx << ",ky=" << m.ky << ",kt=" << m.kt
                      << ",amplitude=" << m.amplitude << ",phase=" << m.phase << ")";
                 },
                 [&](const HolderSpec& h) {
                   os << "holder(alpha=" << h.alpha << ",seed=" << h.seed << ",modes=" << h.modes
                      << ",axis=" << (h.axis == SpectralAxis::space ? "space" : "time") << ")";
                 },
                 [&](const IndicatorSpec& i) { os << "indicator(" << i.lower << "," << i.upper << ")"; },
                 [&](const RiemannSpec& r) {
                   os << "riemann(left=" << r.left << ",right=" << r.right << ",jump=" << r.jump << ")";
                 },
                 [&](const VacuumBumpSpec& v) {
                   os << "vacuum_bump(floor=" << v.floor << ",center=" << v.center
                      << ",width=" << v.width << ")";
                 },
                 [&](const CompositeSpec& c) {
                   os << (c.op == CompositeSpec::Op::sum ? "sum(" : "product(");
                   for (std::size_t i = 0; i < c.terms.size(); ++i) {
                     if (i) os << ",";
                     os << describe(c.terms[i]);
                   }
                   os << ")";
                 },
             },
             s.kind);
  return os.str();
}

// ---------------------------------------------------------------------------
// Generation

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform phase in [0, 2 pi) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double next_phase(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * std::numbers::pi * u;
}

struct Coordinates {
  const Grid& grid;
  // Position of point index along axis a.
  double x(std::size_t point, int a) const {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    const std::size_t i = grid.dim == 1 ? point : (a == 0 ? point / n : point % n);
    return static_cast<double>(i) * grid.dx();
  }
};

/// Unit-RMS random-phase series along one periodic axis of `count` samples.
std::vector<double> holder_series_1d(int count, double alpha, int modes, std::mt19937_64& rng) {
  const int kmax = std::min(modes > 0 ? modes : count / 2, count / 2 - 1);
  std::vector<fft::Complex> c(static_cast<std::size_t>(count));
  double energy = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double a = std::pow(static_cast<double>(k), -alpha - 0.5);
    c[k] = std::polar(a, next_phase(rng));
    energy += 0.5 * a * a;
  }
  auto z = fft::backward_complex(c, 1, count);
  const double scale = energy > 0.0 ? 1.0 / std::sqrt(energy) : 0.0;
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real() * scale;
  return out;
}

/// Unit-RMS isotropic random-phase series on an n x n periodic slice.
std::vector<double> holder_series_2d(int n, double alpha, int modes, std::mt19937_64& rng) {
  const int kmax = modes > 0 ? modes : n / 2;
  std::vector<fft::Complex> c(static_cast<std::size_t>(n) * n);
  double energy = 0.0;
  // Half-plane ky > 0, or ky == 0 with kx > 0, in a fixed order.
  for (int kx = -(n / 2 - 1); kx <= n / 2 - 1; ++kx) {
    for (int ky = 0; ky <= n / 2 - 1; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const double r = std::hypot(static_cast<double>(kx), static_cast<double>(ky));
      if (r > kmax) continue;
      const double a = std::pow(r, -alpha - 1.0);
      const std::size_t ix = static_cast<std::size_t>((kx + n) % n);
      c[ix * n + static_cast<std::size_t>(ky)] = std::polar(a, next_phase(rng));
      energy += 0.5 * a * a;
    }
  }
  auto z = fft::backward_complex(c, 2, n);
  const double scale = energy > 0.0 ? 1.0 / std::sqrt(energy) : 0.0;
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real() * scale;
  return out;
}

double periodic_distance(double a, double b, double length) {
  double d = std::fmod(std::abs(a - b), length);
  return std::min(d, length - d);
}

std::vector<double> evaluate(const Grid& g, const FieldSpec& s, std::uint64_t seed) {
  const std::size_t points = g.points();
  const int slices = std::max(g.nt, 1);
  std::vector<double> out(g.samples());
  const Coordinates xy{g};

  auto fill_spatial = [&](auto&& value_at) {
    std::vector<double> slice(points);
    for (std::size_t p = 0; p < points; ++p) slice[p] = value_at(p);
    for (int t = 0; t < slices; ++t) std::copy(slice.begin(), slice.end(), out.begin() + t * points);
  };

  std::visit(
      Overloaded{
          [&](const ConstantSpec& c) { std::fill(out.begin(), out.end(), c.value); },
          [&](const FourierModeSpec& m) {
            const double two_pi = 2.0 * std::numbers::pi;
            for (int t = 0; t < slices; ++t) {
              const double tphase =
                  g.has_time() ? two_pi * m.kt * (g.time(t) - g.t0) / g.duration() : 0.0;
              for (std::size_t p = 0; p < points; ++p) {
                double arg = two_pi * m.kx * xy.x(p, 0) / g.length + tphase + m.phase;
                if (g.dim == 2) arg += two_pi * m.ky * xy.x(p, 1) / g.length;
                out[t * points + p] = m.amplitude * std::sin(arg);
              }
            }
          },
          [&](const HolderSpec& h) {
            std::mt19937_64 rng(splitmix64(h.seed) ^ splitmix64(seed + 0x5851F42D4C957F2DULL));
            if (h.axis == SpectralAxis::time) {
              auto series = holder_series_1d(g.nt, h.alpha, h.modes, rng);
              for (int t = 0; t < slices; ++t) {
                std::fill(out.begin() + t * points, out.begin() + (t + 1) * points, series[t]);
              }
            } else {
              auto slice = g.dim == 1 ? holder_series_1d(g.n, h.alpha, h.modes, rng)
                                      : holder_series_2d(g.n, h.alpha, h.modes, rng);
              for (int t = 0; t < slices; ++t) std::copy(slice.begin(), slice.end(), out.begin() + t * points);
            }
          },
          [&](const IndicatorSpec& i) {
            fill_spatial([&](std::size_t p) {
              const double x = xy.x(p, 0);
              return (x >= i.lower && x < i.upper) ? 1.0 : 0.0;
            });
          },
          [&](const RiemannSpec& r) {
            fill_spatial([&](std::size_t p) { return xy.x(p, 0) < r.jump ? r.left : r.right; });
          },
          [&](const VacuumBumpSpec& v) {
            const double snapped = std::round(v.center / g.dx()) * g.dx();
            fill_spatial([&](std::size_t p) {
              double r2 = 0.0;
              for (int a = 0; a < g.dim; ++a) {
                const double d = periodic_distance(xy.x(p, a), snapped, g.length);
                r2 += d * d;
              }
              const double r = std::sqrt(r2);
              if (r >= v.width) return 1.0;
              const double c = std::cos(0.5 * std::numbers::pi * r / v.width);
              return v.floor + (1.0 - v.floor) * (1.0 - c * c);
            });
          },
          [&](const CompositeSpec& c) {
            const bool sum = c.op == CompositeSpec::Op::sum;
            std::fill(out.begin(), out.end(), sum ? 0.0 : 1.0);
            for (std::size_t k = 0; k < c.terms.size(); ++k) {
              auto term = evaluate(g, c.terms[k], splitmix64(seed + k + 1));
              for (std::size_t i = 0; i < out.size(); ++i) {
                out[i] = sum ? out[i] + term[i] : out[i] * term[i];
              }
            }
          },
      },
      s.kind);
  return out;
}

}  // namespace

Field generate(const Grid& grid, const FieldSpec& s, std::uint64_t seed) {
  validate(s, grid);
  return Field(grid, 1, evaluate(grid, s, seed));
}

Field generate(const Grid& grid, std::span<const FieldSpec> specs, std::uint64_t seed) {
  require(!specs.empty(), "generate needs at least one spec");
  std::vector<Field> channels;
  channels.reserve(specs.size());
  for (std::size_t c = 0; c < specs.size(); ++c) {
    channels.push_back(generate(grid, specs[c], seed + c));
  }
  return stack_components(channels);
}

}  // namespace onsager
