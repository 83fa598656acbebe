#pragma once

#include <span>
#include <string_view>

namespace onsager {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Coefficient of determination; 1 when the residual vanishes.
  double r2 = 1.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
/// distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

enum class RateStatus {
  ok,
  /// Every norm was exactly zero.
  exact,
  /// Fewer than three nonzero points remained.
  insufficient,
};

std::string_view to_string(RateStatus status);

struct RateFit {
  RateStatus status = RateStatus::insufficient;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
  int dropped_zeros = 0;
};

/// Fits log(norm) = slope * log(epsilon) + intercept. Exact zeros are dropped
/// and counted rather than fitted.
RateFit rate_fit(std::span<const double> epsilons, std::span<const double> norms);

}  // namespace onsager
