#pragma once

#include <span>
#include <utility>
#include <vector>

#include "onsager/field.hpp"

namespace onsager {

/// Normalizing constant C0 of eta(x) = C0 exp(-1 / (1 - |x|^2)) on the unit
/// ball of R^dim, dim in {1, 2, 3}.
double mollifier_constant(int dim);

/// eta_eps(x) = eps^-dim eta(x / eps) with dim = x.size().
double kernel_value(std::span<const double> x, double epsilon);
double kernel_value(double x, double epsilon);

/// One lattice point of a discrete kernel: offsets in time steps and grid
/// cells per spatial axis.
struct Tap {
  int t = 0;
  int x = 0;
  int y = 0;
  double weight = 0.0;
};

/// Discretized eta_eps on the support lattice of a grid. Weights are kernel
/// samples at every lattice point strictly inside the eps-ball, renormalized
/// so that their sequential sum in tap order is exactly 1.
class Mollifier {
 public:
  static Mollifier space(const Grid& grid, double epsilon);
  static Mollifier spacetime(const Grid& grid, double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  /// d for space kernels, d + 1 for space-time kernels.
  int effective_dim() const noexcept { return dim_eff_; }
  int spatial_dim() const noexcept { return grid_.dim; }
  bool is_spacetime() const noexcept { return dim_eff_ > grid_.dim; }
  /// Largest |offset| in cells along a spatial axis, and in time steps.
  int space_reach() const noexcept { return reach_x_; }
  int time_reach() const noexcept { return reach_t_; }
  const std::vector<Tap>& taps() const noexcept { return taps_; }
  const Grid& grid() const noexcept { return grid_; }

  /// Sequential sum of the weights in tap order.
  double mass() const;
  /// Fourier multiplier sum_j w_j cos(2 pi (kx x_j + ky y_j) / n) of a space
  /// kernel, evaluated by direct summation.
  double symbol(int kx, int ky = 0) const;
  /// Whether the direct-sum path is used by default (diameter <= 33 cells).
  bool prefers_direct() const noexcept;

 private:
  Mollifier(Grid grid, double epsilon, int dim_eff) : grid_(grid), epsilon_(epsilon), dim_eff_(dim_eff) {}
  void build();

  Grid grid_;
  double epsilon_;
  int dim_eff_;
  int reach_x_ = 0;
  int reach_t_ = 0;
  std::vector<Tap> taps_;
};

enum class ConvolutionPath { automatic, direct, spectral };

/// Periodic convolution with the space kernel, applied per time slice and
/// per component. Requires 2 dx <= eps < length / 2.
Field mollify_space(const Field& field, double epsilon, ConvolutionPath path = ConvolutionPath::automatic);

/// Time samples j with t_j - t0 in [eps, T - eps], T = nt dt, as (first, count).
std::pair<int, int> interior_window(const Grid& grid, double epsilon);

/// Space-time convolution, returned on interior_window(grid, eps). Requires
/// eps >= 2 max(dx, dt) and eps < T / 2.
Field mollify_spacetime(const Field& field, double epsilon,
                        ConvolutionPath path = ConvolutionPath::automatic);

/// Spectral derivative along spatial axis `axis`, per slice and component.
Field gradient(const Field& field, int axis);

/// Centered difference in time, on the window [1, nt - 1).
Field time_derivative(const Field& field);

}  // namespace onsager
