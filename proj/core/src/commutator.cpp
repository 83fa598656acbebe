#include "onsager/commutator.hpp"

#include <algorithm>
#include <cmath>

#include "onsager/error.hpp"
#include "onsager/parallel.hpp"

namespace onsager {

std::string_view to_string(MollifyMode mode) { return mode == MollifyMode::space ? "space" : "spacetime"; }

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::t: return "t";
  }
  return "?";
}

std::string_view to_string(CommutatorKind kind) { return kind == CommutatorKind::cet ? "cet" : "lions"; }

Field mollify(const Field& field, double epsilon, MollifyMode mode) {
  return mode == MollifyMode::space ? mollify_space(field, epsilon) : mollify_spacetime(field, epsilon);
}

namespace {

Field centred(const Field& f) {
  std::vector<double> out(f.data().begin(), f.data().end());
  const int c = f.components();
  std::vector<double> ref(out.begin(), out.begin() + c);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= ref[i % c];
  return Field(f.grid(), c, std::move(out));
}

void check_pair(const Field& f, const Field& g, const char* name) {
  require_same_grid(f, g, name);
  require(f.components() == g.components(), std::string(name) + ": component counts differ");
}

// Restrict a full space-time field to the window a mollified field lives on.
Field align(const Field& field, const Grid& target) {
  if (!target.has_time() || field.grid() == target) return field;
  const int first = static_cast<int>(std::lround((target.t0 - field.grid().t0) / field.grid().dt));
  return field.window(first, target.nt);
}

}  // namespace

Field cet_commutator(const Field& f, const Field& g, double epsilon, MollifyMode mode) {
  check_pair(f, g, "cet_commutator");
  const Field fc = centred(f);
  const Field gc = centred(g);
  const Field fg = mollify(fc * gc, epsilon, mode);
  return fg - mollify(fc, epsilon, mode) * mollify(gc, epsilon, mode);
}

double cet_split_check(const Field& f, const Field& g, double epsilon) {
  check_pair(f, g, "cet_split_check");
  const Grid& grid = f.grid();
  const Mollifier m = Mollifier::space(grid, epsilon);
  const Field lhs = cet_commutator(f, g, epsilon, MollifyMode::space);

  const Field fe = mollify_space(f, epsilon, ConvolutionPath::direct);
  const Field ge = mollify_space(g, epsilon, ConvolutionPath::direct);
  const int n = grid.n;
  const int comps = f.components();
  const std::size_t points = grid.points();
  auto wrap = [n](int i) { return static_cast<std::size_t>(((i % n) + n) % n); };
  double worst = 0.0;
  for (int t = 0; t < std::max(grid.nt, 1); ++t) {
    for (std::size_t p = 0; p < points; ++p) {
      for (int c = 0; c < comps; ++c) {
        const double fx = f.at(t, p, c);
        const double gx = g.at(t, p, c);
        double G = 0.0;
        for (const Tap& tap : m.taps()) {
          std::size_t src;
          if (grid.dim == 1) {
            src = wrap(static_cast<int>(p) - tap.x);
          } else {
            src = wrap(static_cast<int>(p / n) - tap.x) * n + wrap(static_cast<int>(p % n) - tap.y);
          }
          G += tap.weight * (f.at(t, src, c) - fx) * (g.at(t, src, c) - gx);
        }
        const double rhs = G - (fx - fe.at(t, p, c)) * (gx - ge.at(t, p, c));
        worst = std::max(worst, std::abs(lhs.at(t, p, c) - rhs));
      }
    }
  }
  return worst;
}

Field lions_commutator(const Field& f, const Field& g, double epsilon, Axis axis, MollifyMode mode) {
  check_pair(f, g, "lions_commutator");
  const Grid& grid = f.grid();
  if (axis == Axis::t) require(grid.has_time(), "time derivative requested on a space-only field");
  if (axis == Axis::y) require(grid.dim == 2, "y derivative requested on a 1-D field");
  const Field fc = centred(f);
  const Field fg = mollify(fc * g, epsilon, mode);
  const Field ge = mollify(g, epsilon, mode);
  const Field inner = fg - align(fc, fg.grid()) * ge;
  if (axis == Axis::t) return time_derivative(inner);
  return gradient(inner, axis == Axis::x ? 0 : 1);
}

std::vector<double> dyadic_epsilons(int first_exponent, int last_exponent) {
  require(last_exponent > first_exponent, "dyadic sweep must run towards smaller epsilon");
  std::vector<double> out;
  for (int j = first_exponent; j <= last_exponent; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

namespace {

void check_sweep(const std::vector<double>& eps) {
  require(eps.size() >= 3, "a sweep needs at least three epsilon values");
  for (std::size_t i = 1; i < eps.size(); ++i) {
    require(eps[i] < eps[i - 1], "epsilon values must be strictly decreasing");
  }
}

CommutatorReport run_sweep(CommutatorKind kind, Axis axis, std::vector<double> epsilons, const SweepOptions& o,
                           const std::function<Field(double)>& commutator) {
  check_sweep(epsilons);
  CommutatorReport r;
  r.kind = kind;
  r.mode = o.mode;
  r.axis = axis;
  r.p = o.p;
  r.q = o.q;
  r.field_tags = o.field_tags;
  r.epsilons = std::move(epsilons);
  r.norms.resize(r.epsilons.size());
  parallel_for(r.epsilons.size(), [&](std::size_t i) {
    r.norms[i] = mixed_norm(commutator(r.epsilons[i]), o.p, o.q);
  });
  r.fit = rate_fit(r.epsilons, r.norms);
  return r;
}

}  // namespace

CommutatorReport cet_sweep(const Field& f, const Field& g, std::vector<double> epsilons, const SweepOptions& o) {
  return run_sweep(CommutatorKind::cet, Axis::x, std::move(epsilons), o,
                   [&](double e) { return cet_commutator(f, g, e, o.mode); });
}

CommutatorReport lions_sweep(const Field& f, const Field& g, std::vector<double> epsilons, Axis axis,
                             const SweepOptions& o) {
  return run_sweep(CommutatorKind::lions, axis, std::move(epsilons), o,
                   [&](double e) { return lions_commutator(f, g, e, axis, o.mode); });
}

Table report_table(const CommutatorReport& r) {
  Table t{{"epsilon", "norm", "p", "q", "kind"}, {}};
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    t.add_row({r.epsilons[i], r.norms[i], r.p, r.q, std::string(to_string(r.kind))});
  }
  return t;
}

nlohmann::json report_json(const CommutatorReport& r) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  return {
      {"kind", to_string(r.kind)},
      {"mode", to_string(r.mode)},
      {"axis", to_string(r.axis)},
      {"p", number(r.p)},
      {"q", number(r.q)},
      {"epsilons", r.epsilons},
      {"norms", r.norms},
      {"fit",
       {{"status", to_string(r.fit.status)},
        {"slope", r.fit.slope},
        {"intercept", r.fit.intercept},
        {"r2", r.fit.r2},
        {"points", r.fit.points},
        {"dropped_zeros", r.fit.dropped_zeros}}},
      {"fields", r.field_tags},
  };
}

}  // namespace onsager
