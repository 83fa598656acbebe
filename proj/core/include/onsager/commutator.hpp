#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "onsager/field.hpp"
#include "onsager/fit.hpp"
#include "onsager/mollify.hpp"
#include "onsager/table.hpp"

namespace onsager {

/// Space mollifies each time slice; space-time uses the (d+1)-dimensional
/// kernel and returns fields on the interior time window.
enum class MollifyMode { space, spacetime };

enum class Axis { x, y, t };

std::string_view to_string(MollifyMode mode);
std::string_view to_string(Axis axis);

/// f^eps under the given mode.
Field mollify(const Field& field, double epsilon, MollifyMode mode);

/// (fg)^eps - f^eps g^eps. Both inputs are shifted by their first sample
/// before the products are formed; the commutator is unchanged by constant
/// shifts, and the shift makes constant inputs give exactly zero.
Field cet_commutator(const Field& f, const Field& g, double epsilon, MollifyMode mode = MollifyMode::space);

/// Evaluates (fg)^eps - f^eps g^eps and G - (f - f^eps)(g - g^eps) along
/// independent paths, where G(x) = sum_y w(y) (f(x-y) - f(x)) (g(x-y) - g(x))
/// is a direct sum over the space kernel. Returns the max-norm difference.
double cet_split_check(const Field& f, const Field& g, double epsilon);

/// d[(fg)^eps] - d[f g^eps] along `axis`: spectral in space, centered
/// differences in time (the time window shrinks by one sample per end).
Field lions_commutator(const Field& f, const Field& g, double epsilon, Axis axis,
                       MollifyMode mode = MollifyMode::space);

enum class CommutatorKind { cet, lions };
std::string_view to_string(CommutatorKind kind);

struct CommutatorReport {
  CommutatorKind kind = CommutatorKind::cet;
  MollifyMode mode = MollifyMode::space;
  Axis axis = Axis::x;
  /// Strictly decreasing.
  std::vector<double> epsilons;
  /// Mixed L^p(L^q) norm of the commutator at each epsilon.
  std::vector<double> norms;
  double p = 2.0;
  double q = 2.0;
  RateFit fit;
  std::vector<std::string> field_tags;
};

/// 2^-first, 2^-(first+1), ..., 2^-last.
std::vector<double> dyadic_epsilons(int first_exponent, int last_exponent);

struct SweepOptions {
  double p = 2.0;
  double q = 2.0;
  MollifyMode mode = MollifyMode::space;
  std::vector<std::string> field_tags;
};

CommutatorReport cet_sweep(const Field& f, const Field& g, std::vector<double> epsilons,
                           const SweepOptions& options);
CommutatorReport lions_sweep(const Field& f, const Field& g, std::vector<double> epsilons, Axis axis,
                             const SweepOptions& options);

/// Columns epsilon, norm, p, q, kind.
Table report_table(const CommutatorReport& report);
nlohmann::json report_json(const CommutatorReport& report);

}  // namespace onsager
