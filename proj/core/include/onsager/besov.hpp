#pragma once

#include <optional>
#include <span>
#include <vector>

#include "onsager/field.hpp"
#include "onsager/table.hpp"

namespace onsager {

/// Smoothness and integrability exponents. beta and p describe the time
/// direction and are only used by the space-time estimate.
struct BesovParams {
  double alpha = 0.5;
  double q = 2.0;
  std::optional<double> beta;
  std::optional<double> p;

  /// 0 < alpha < 1, q >= 1, and beta >= alpha, beta < 1, p >= 1 when present.
  void validate() const;
};

/// Grid-aligned spatial shift, in cells per axis.
struct Shift {
  int x = 0;
  int y = 0;

  double magnitude(const Grid& grid) const;
  friend bool operator==(const Shift&, const Shift&) = default;
};

/// Dyadic shifts 2^j cells along each axis, plus the diagonal in 2D, with
/// physical length in [min_length, max_length].
std::vector<Shift> dyadic_shifts(const Grid& grid, double min_length, double max_length);
/// The fit window [4 dx, length / 8].
std::vector<Shift> default_shifts(const Grid& grid);
/// Dyadic time shifts (in steps) with length in [4 dt, T / 8].
std::vector<int> default_time_shifts(const Grid& grid);

/// f(. - shift), periodic.
Field translate(const Field& field, Shift shift);

/// ||f(. - y) - f||_{L^q} over one space-only field; pointwise magnitude is
/// Euclidean over components. Sums are taken over sorted terms so the value
/// is exactly invariant under grid translations of f.
double difference_norm(const Field& field, Shift shift, double q);

struct ShiftSample {
  double length = 0.0;
  double norm = 0.0;
  Shift shift;
  int time_steps = 0;
};

struct BesovEstimate {
  double seminorm = 0.0;
  ShiftSample worst;
  /// Log-log slope of norm against shift length; empty when the field shows
  /// no scaling (all differences zero).
  std::optional<double> fitted_alpha;
  double fit_r2 = 0.0;
  std::vector<ShiftSample> samples;
};

/// max over shifts of |y|^-alpha ||f(. - y) - f||_{L^q}, with the fitted
/// exponent over the same shifts. Field must be space-only.
BesovEstimate besov_seminorm_space(const Field& field, double alpha, double q, std::span<const Shift> shifts);

struct SpaceTimeBesovEstimate {
  /// Temporal differences ||f(t + h) - f(t)||_{L^p_t(L^q_x)} over h.
  BesovEstimate time;
  /// Spatial differences ||f(., . - y) - f||_{L^p_t(L^q_x)} over y.
  BesovEstimate space;
};

/// Temporal differences are not wrapped: the L^p_t norm runs over the valid
/// range [t0, t0 + T - h) and is rescaled to the full duration T, so
/// different h are comparable. Requires params.beta and params.p.
SpaceTimeBesovEstimate besov_seminorm_spacetime(const Field& field, const BesovParams& params,
                                                std::span<const int> time_shifts,
                                                std::span<const Shift> space_shifts);

struct HolderFit {
  /// Slope clamped to [0, 1].
  double alpha = 0.0;
  double raw_slope = 0.0;
  double r2 = 0.0;
  bool out_of_range = false;
  bool no_scaling = false;
  std::vector<ShiftSample> samples;
};

/// Largest alpha with finite semi-norm, estimated by regression over
/// default_shifts(grid).
HolderFit holder_exponent_fit(const Field& field, double q);

/// Columns shift_x, shift_y, time_steps, length, norm.
Table difference_table(std::span<const ShiftSample> samples);

}  // namespace onsager
