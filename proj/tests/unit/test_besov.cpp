#include <onsager/besov.hpp>
#include <onsager/error.hpp>
#include <onsager/mollify.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace onsager;

namespace {

// ||f(. - y) - f||_{L^q} by a plain loop.
double difference_loop(const Field& f, int shift, double q) {
  const int n = f.grid().n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += std::pow(std::abs(f.at(0, oracle::wrap(j - shift, n)) - f.at(0, j)), q);
  return std::pow(s * f.grid().dx(), 1.0 / q);
}

}  // namespace

TEST(Shifts, DefaultWindow) {
  const Grid g = make_grid(2, 256);
  const auto shifts = default_shifts(g);
  ASSERT_FALSE(shifts.empty());
  for (const Shift& s : shifts) {
    EXPECT_GE(s.magnitude(g), 4 * g.dx() - 1e-15);
    EXPECT_LE(s.magnitude(g), std::sqrt(2.0) * g.length / 8 + 1e-15);
  }
  // x and y shifts of 4..32 cells; the 32-cell diagonal is longer than length/8
  EXPECT_EQ(shifts.size(), 4u + 4u + 3u);
}

TEST(Difference, MatchesLoopOracle) {
  const Field f = oracle::noise(make_grid(1, 128), 3);
  for (int s : {1, 5, 32})
    for (double q : {1.0, 1.5, 3.0}) EXPECT_NEAR(difference_norm(f, {s, 0}, q), difference_loop(f, s, q), 1e-13);
}

TEST(Difference, IndicatorClosedForm) {
  const Grid g = make_grid(1, 1024);
  const Field f = generate(g, spec::indicator(0.0, 0.5));
  for (int s : {4, 16, 100})
    for (double q : {1.0, 3.0, 4.0})
      EXPECT_NEAR(difference_norm(f, {s, 0}, q), std::pow(2.0 * s * g.dx(), 1.0 / q), 1e-13);
}

TEST(Seminorm, ConstantFieldFlagsNoScaling) {
  const Field c = Field::constant(make_grid(1, 256), 2.0);
  const auto shifts = default_shifts(c.grid());
  const BesovEstimate e = besov_seminorm_space(c, 0.5, 2.0, shifts);
  EXPECT_EQ(e.seminorm, 0.0);
  EXPECT_FALSE(e.fitted_alpha.has_value());
  EXPECT_TRUE(holder_exponent_fit(c, 2.0).no_scaling);
}

TEST(Seminorm, RejectsBadInput) {
  const Field f = oracle::noise(make_grid(1, 256), 1);
  const std::vector<Shift> none;
  EXPECT_THROW(besov_seminorm_space(f, 0.5, 2.0, none), InvalidArgument);
  const auto shifts = default_shifts(f.grid());
  EXPECT_THROW(besov_seminorm_space(f, 1.0, 2.0, shifts), InvalidArgument);
  EXPECT_THROW(besov_seminorm_space(f, 0.0, 2.0, shifts), InvalidArgument);
  const std::vector<Shift> too_far{{100, 0}};
  EXPECT_THROW(besov_seminorm_space(f, 0.5, 2.0, too_far), InvalidArgument);
}

TEST(Seminorm, MonotoneInAlpha) {
  const Field f = generate(make_grid(1, 1024), spec::holder(0.5, 2));
  const auto shifts = default_shifts(f.grid());
  double prev = 0.0;
  for (double a = 0.05; a < 1.0; a += 0.1) {
    const double s = besov_seminorm_space(f, a, 2.0, shifts).seminorm;
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(Seminorm, TranslationInvariantAndHomogeneous) {
  const Field f = generate(make_grid(2, 64), spec::holder(0.4, 8));
  const auto shifts = default_shifts(f.grid());
  const double base = besov_seminorm_space(f, 0.4, 3.0, shifts).seminorm;
  EXPECT_NEAR(besov_seminorm_space(translate(f, {5, 11}), 0.4, 3.0, shifts).seminorm, base, 1e-12 * base);
  EXPECT_NEAR(besov_seminorm_space(-3.0 * f, 0.4, 3.0, shifts).seminorm, 3.0 * base, 1e-12 * base);
}

TEST(HolderFit, IndicatorGivesOneOverQ) {
  const Field f = generate(make_grid(1, 4096), spec::indicator(0.0, 0.5));
  for (double q : {2.0, 3.0, 4.0}) EXPECT_NEAR(holder_exponent_fit(f, q).alpha, 1.0 / q, 0.05) << q;
}

TEST(HolderFit, SmoothFieldSaturates) {
  const HolderFit fit = holder_exponent_fit(generate(make_grid(1, 4096), spec::fourier_mode(1)), 2.0);
  EXPECT_NEAR(fit.alpha, 1.0, 0.02);
}

TEST(HolderFit, GeneratorRoundTrip) {
  const Grid g = make_grid(1, 8192);
  for (double a : {0.35, 0.5}) {
    const HolderFit fit = holder_exponent_fit(generate(g, spec::holder(a, 13)), 2.0);
    EXPECT_NEAR(fit.alpha, a, 0.1) << a;
    EXPECT_FALSE(fit.out_of_range);
  }
}

TEST(HolderFit, MollificationDoesNotReduceRegularity) {
  const Field f = generate(make_grid(1, 4096), spec::holder(0.4, 5));
  const double a0 = holder_exponent_fit(f, 2.0).alpha;
  for (double eps : {1.0 / 512, 1.0 / 128}) EXPECT_GE(holder_exponent_fit(mollify_space(f, eps), 2.0).alpha, a0 - 0.05);
}

TEST(SpaceTime, SeparableExponents) {
  const Grid g = make_grid(1, 1024, 1.0, 1024, 1.0);
  const Field f = generate(g, spec::product({spec::holder(0.6, 1, 0, SpectralAxis::time), spec::holder(0.4, 2)}));
  BesovParams params{0.4, 2.0, 0.6, 2.0};
  const auto est = besov_seminorm_spacetime(f, params, default_time_shifts(g), default_shifts(g));
  ASSERT_TRUE(est.time.fitted_alpha && est.space.fitted_alpha);
  EXPECT_NEAR(*est.time.fitted_alpha, 0.6, 0.1);
  EXPECT_NEAR(*est.space.fitted_alpha, 0.4, 0.1);
}

TEST(SpaceTime, TimeConstantAndConstantFields) {
  const Grid g = make_grid(1, 64, 1.0, 64, 1.0);
  BesovParams params{0.4, 2.0, 0.5, 2.0};
  const auto est = besov_seminorm_spacetime(generate(g, spec::fourier_mode(1)), params, default_time_shifts(g),
                                            default_shifts(g));
  EXPECT_EQ(est.time.seminorm, 0.0);
  EXPECT_GT(est.space.seminorm, 0.0);
  const auto flat = besov_seminorm_spacetime(Field::constant(g, 1.0), params, default_time_shifts(g), default_shifts(g));
  EXPECT_EQ(flat.time.seminorm, 0.0);
  EXPECT_EQ(flat.space.seminorm, 0.0);
}

TEST(BesovParams, Validation) {
  EXPECT_NO_THROW((BesovParams{0.4, 3.0, 0.5, 3.0}.validate()));
  EXPECT_THROW((BesovParams{0.4, 3.0, 0.3, 3.0}.validate()), InvalidArgument);
  EXPECT_THROW((BesovParams{1.2, 3.0}.validate()), InvalidArgument);
  EXPECT_THROW((BesovParams{0.4, 0.5}.validate()), InvalidArgument);
}

TEST(DifferenceTable, Columns) {
  const Field f = generate(make_grid(1, 256), spec::holder(0.5, 1));
  const auto est = besov_seminorm_space(f, 0.5, 2.0, default_shifts(f.grid()));
  const Table t = difference_table(est.samples);
  EXPECT_EQ(t.rows.size(), est.samples.size());
  EXPECT_EQ(t.header.front(), "shift_x");
}
