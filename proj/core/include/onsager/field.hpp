#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace onsager {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Uniform periodic grid on the torus [0, length)^dim, optionally carrying a
/// sampled time axis t_j = t0 + j*dt for j = 0..nt-1. A grid with nt == 0 is
/// space-only.
struct Grid {
  int dim = 1;
  int n = 8;
  double length = 1.0;
  int nt = 0;
  double dt = 0.0;
  double t0 = 0.0;

  double dx() const noexcept { return length / n; }
  bool has_time() const noexcept { return nt > 0; }
  /// n^dim, the number of points in one time slice.
  std::size_t points() const noexcept;
  /// Number of sample locations, max(nt, 1) * points().
  std::size_t samples() const noexcept;
  double cell_volume() const noexcept;
  double time(int j) const noexcept { return t0 + j * dt; }
  /// Measure of the time axis under the rectangle rule, nt * dt.
  double duration() const noexcept { return nt * dt; }

  Grid space_only() const;
  /// Sub-grid holding time samples [first, first + count).
  Grid time_window(int first, int count) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Validated space (nt == 0) or space-time grid with dt = t_end / nt.
Grid make_grid(int dim, int n, double length = 1.0, int nt = 0, double t_end = 0.0);
Grid make_spacetime_grid(int dim, int n, double length, int nt, double dt, double t0 = 0.0);

bool is_power_of_two(int n) noexcept;

/// Samples of a scalar or vector function on a Grid. Layout is row-major in
/// (t, x_1, ..., x_dim, component); every index wraps periodically in space.
/// Immutable once constructed; all entries are finite.
class Field {
 public:
  Field(Grid grid, int components, std::vector<double> data);

  static Field constant(const Grid& grid, double value, int components = 1);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Interleaved samples of time slice t (t = 0 for space-only fields).
  std::span<const double> slice(int t) const;
  double at(int t, std::size_t point, int component = 0) const {
    return data_[(static_cast<std::size_t>(t) * grid_.points() + point) * components_ + component];
  }
  /// Contiguous copy of one component of one time slice.
  std::vector<double> channel_slice(int t, int component = 0) const;

  Field channel(int component) const;
  Field time_slice(int t) const;
  Field window(int first, int count) const;

  std::vector<double> release() && { return std::move(data_); }

 private:
  Grid grid_;
  int components_;
  std::vector<double> data_;
};

void require_same_grid(const Field& a, const Field& b, const char* operation);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
/// Pointwise product; components must match.
Field operator*(const Field& a, const Field& b);
Field operator*(double scale, const Field& f);
Field transform(const Field& f, const std::function<double(double)>& op);
/// Concatenate scalar fields on a common grid into one multi-component field.
Field stack_components(std::span<const Field> channels);
/// Stack space-only slices into a space-time field with the given time axis.
Field stack_slices(std::span<const Field> slices, double dt, double t0 = 0.0);

/// Space-time L^r norm over the full array; r = kInfinity gives the sample
/// maximum. Pointwise magnitude is Euclidean over components.
double lp_norm(const Field& f, double r);
/// Time-L^p norm of the space-L^q norm, both by the rectangle rule. On a
/// space-only field this is the L^q norm.
double mixed_norm(const Field& f, double p, double q);

// ---------------------------------------------------------------------------
// Field specifications

enum class SpectralAxis { space, time };

struct ConstantSpec {
  double value = 0.0;
};

/// amplitude * sin(2 pi (kx x + ky y) / length + 2 pi kt (t - t0) / T + phase)
struct FourierModeSpec {
  int kx = 1;
  int ky = 0;
  int kt = 0;
  double amplitude = 1.0;
  double phase = 0.0;
};

/// Random-phase Fourier series with amplitudes |k|^(-alpha - d/2), where d is
/// the dimension of the synthesized axis. modes == 0 means "up to Nyquist".
/// Normalized to unit root-mean-square.
struct HolderSpec {
  double alpha = 0.5;
  std::uint64_t seed = 0;
  int modes = 0;
  SpectralAxis axis = SpectralAxis::space;
};

/// 1 on [lower, upper) along the first axis, 0 elsewhere.
struct IndicatorSpec {
  double lower = 0.0;
  double upper = 0.5;
};

/// `left` for x < jump and `right` for x >= jump along the first axis. On the
/// torus this carries a second jump at x = 0.
struct RiemannSpec {
  double left = 1.0;
  double right = 0.125;
  double jump = 0.5;
};

/// Background 1 with a smooth dip down to `floor` at `center` (snapped to the
/// nearest grid point) over radius `width`.
struct VacuumBumpSpec {
  double floor = 0.0;
  double center = 0.5;
  double width = 0.25;
};

struct FieldSpec;

struct CompositeSpec {
  enum class Op { sum, product };
  Op op = Op::sum;
  std::vector<FieldSpec> terms;
};

struct FieldSpec {
  std::variant<ConstantSpec, FourierModeSpec, HolderSpec, IndicatorSpec, RiemannSpec,
               VacuumBumpSpec, CompositeSpec>
      kind;
};

namespace spec {
FieldSpec constant(double value);
FieldSpec fourier_mode(int kx, double amplitude = 1.0, double phase = 0.0, int ky = 0, int kt = 0);
FieldSpec holder(double alpha, std::uint64_t seed, int modes = 0,
                 SpectralAxis axis = SpectralAxis::space);
FieldSpec indicator(double lower, double upper);
FieldSpec riemann(double left, double right, double jump);
FieldSpec vacuum_bump(double floor, double center, double width);
FieldSpec sum(std::vector<FieldSpec> terms);
FieldSpec product(std::vector<FieldSpec> terms);
}  // namespace spec

/// Throws InvalidArgument when the spec is malformed or does not fit the grid.
void validate(const FieldSpec& spec, const Grid& grid);

/// Compact human-readable tag, e.g. "holder(alpha=0.4,seed=7,modes=0,axis=space)".
std::string describe(const FieldSpec& spec);

/// Deterministic in (grid, spec, seed).
Field generate(const Grid& grid, const FieldSpec& spec, std::uint64_t seed = 0);
/// One component per spec.
Field generate(const Grid& grid, std::span<const FieldSpec> specs, std::uint64_t seed = 0);

}  // namespace onsager
