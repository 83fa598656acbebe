#include "onsager/fit.hpp"

#include <cmath>
#include <vector>

#include "onsager/error.hpp"

namespace onsager {

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "least_squares: x and y lengths differ");
  require(x.size() >= 2, "least_squares: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "least_squares: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = (ss_res == 0.0 || syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

std::string_view to_string(RateStatus status) {
  switch (status) {
    case RateStatus::ok: return "ok";
    case RateStatus::exact: return "exact";
    case RateStatus::insufficient: return "insufficient";
  }
  return "unknown";
}

RateFit rate_fit(std::span<const double> epsilons, std::span<const double> norms) {
  require(epsilons.size() == norms.size(), "rate_fit: sweep lengths differ");
  std::vector<double> lx, ly;
  RateFit out;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    require(epsilons[i] > 0.0 && std::isfinite(epsilons[i]), "rate_fit: epsilon must be positive");
    require(norms[i] >= 0.0 && std::isfinite(norms[i]), "rate_fit: norms must be finite and >= 0");
    if (norms[i] == 0.0) {
      ++out.dropped_zeros;
      continue;
    }
    lx.push_back(std::log(epsilons[i]));
    ly.push_back(std::log(norms[i]));
  }
  out.points = static_cast<int>(lx.size());
  if (lx.empty() && !norms.empty()) {
    out.status = RateStatus::exact;
    return out;
  }
  if (lx.size() < 3) {
    out.status = RateStatus::insufficient;
    return out;
  }
  const LineFit f = least_squares(lx, ly);
  out.status = RateStatus::ok;
  out.slope = f.slope;
  out.intercept = f.intercept;
  out.r2 = f.r2;
  return out;
}

}  // namespace onsager
