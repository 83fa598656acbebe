#include <onsager/error.hpp>
#include <onsager/field.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"

using namespace onsager;

TEST(Grid, SpaceTimeSpacing) {
  const Grid g = make_grid(2, 128, 1.0, 32, 1.0);
  EXPECT_TRUE(g.has_time());
  EXPECT_DOUBLE_EQ(g.dt, 1.0 / 32);
  EXPECT_EQ(g.points(), 128u * 128u);
  EXPECT_EQ(g.samples(), 32u * 128u * 128u);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(3, 64), InvalidArgument);
  EXPECT_THROW(make_grid(1, 48), InvalidArgument);
  EXPECT_THROW(make_grid(1, 4), InvalidArgument);
  EXPECT_THROW(make_grid(1, 64, -1.0), InvalidArgument);
  EXPECT_THROW(make_grid(1, 64, 1.0, 8, 0.0), InvalidArgument);
}

TEST(Generate, ConstantAndMode) {
  const Grid g = make_grid(1, 64);
  const Field c = generate(g, spec::constant(3.0));
  for (double v : c.data()) EXPECT_EQ(v, 3.0);
  const Field f = generate(g, spec::fourier_mode(2));
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(f.at(0, j), std::sin(4 * M_PI * j / 64.0), 1e-14);
  EXPECT_LE(oracle::max_abs(f), 1.0);
}

TEST(Generate, DeterministicInSeed) {
  const Grid g = make_grid(2, 64, 1.0, 4, 1.0);
  const auto s = spec::holder(0.4, 7);
  const Field a = generate(g, s, 3), b = generate(g, s, 3), c = generate(g, s, 4);
  ASSERT_EQ(a.data().size(), b.data().size());
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
  EXPECT_FALSE(std::equal(a.data().begin(), a.data().end(), c.data().begin()));
}

TEST(Generate, HolderHasUnitRms) {
  const Field f = generate(make_grid(1, 4096), spec::holder(0.3, 11));
  EXPECT_NEAR(lp_norm(f, 2.0), 1.0, 1e-12);
}

TEST(Generate, DensityKindsNonnegative) {
  const Grid g = make_grid(1, 256);
  const Field bump = generate(g, spec::vacuum_bump(0.0, 0.37, 0.2));
  double lo = 1e300;
  for (double v : bump.data()) lo = std::min(lo, v);
  EXPECT_EQ(lo, 0.0);
  const Field riemann = generate(g, spec::riemann(1.0, 0.125, 0.5));
  for (double v : riemann.data()) EXPECT_GE(v, 0.0);
}

TEST(Generate, RejectsMismatchedSpec) {
  EXPECT_THROW(generate(make_grid(1, 64), spec::fourier_mode(1, 1.0, 0.0, 1)), InvalidArgument);
  EXPECT_THROW(generate(make_grid(1, 64), spec::fourier_mode(1, 1.0, 0.0, 0, 1)), InvalidArgument);
  EXPECT_THROW(generate(make_grid(1, 64), spec::holder(1.5, 0)), InvalidArgument);
}

TEST(Norms, ConstantOneIsOne) {
  const Field one = Field::constant(make_grid(2, 32, 1.0, 8, 1.0), 1.0);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity})
    for (double q : {1.0, 2.0, 4.0, kInfinity}) EXPECT_NEAR(mixed_norm(one, p, q), 1.0, 1e-14);
}

TEST(Norms, SineL2) {
  const Field f = generate(make_grid(1, 256), spec::fourier_mode(1));
  EXPECT_NEAR(lp_norm(f, 2.0), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Norms, SeparableMixedNorm) {
  const Grid g = make_grid(1, 64, 1.0, 16, 1.0);
  const Field h = oracle::noise(g.space_only(), 1);
  const Field gt = oracle::noise(make_grid(1, 16), 2);
  std::vector<double> data;
  for (int t = 0; t < 16; ++t)
    for (int j = 0; j < 64; ++j) data.push_back(gt.at(0, t) * h.at(0, j));
  const Field f(g, 1, data);
  // g(t) sampled with dt = 1/16 has the same rectangle-rule norm as a 16-point unit torus.
  for (auto [p, q] : {std::pair{2.0, 3.0}, {1.5, 1.0}, {kInfinity, 2.0}, {4.0, kInfinity}})
    EXPECT_NEAR(mixed_norm(f, p, q), lp_norm(gt, p) * lp_norm(h, q), 1e-12 * mixed_norm(f, p, q));
}

TEST(Norms, MixedEqualsFullWhenExponentsMatch) {
  const Field f = oracle::noise(make_grid(2, 16, 1.0, 8, 0.5), 5, 2);
  for (double r : {1.0, 2.0, 3.0, kInfinity})
    EXPECT_NEAR(mixed_norm(f, r, r), lp_norm(f, r), 1e-12 * lp_norm(f, r));
}

TEST(Norms, NormAxioms) {
  const Grid g = make_grid(1, 128, 1.0, 8, 1.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Field a = oracle::noise(g, s), b = oracle::noise(g, s + 100);
    for (auto [p, q] : {std::pair{1.0, 1.0}, {2.0, 3.0}, {1.5, kInfinity}}) {
      const double na = mixed_norm(a, p, q);
      EXPECT_NEAR(mixed_norm(-2.5 * a, p, q), 2.5 * na, 1e-12 * na);
      EXPECT_LE(mixed_norm(a + b, p, q), (na + mixed_norm(b, p, q)) * (1 + 1e-12));
    }
  }
  EXPECT_EQ(mixed_norm(Field::constant(g, 0.0), 2.0, 2.0), 0.0);
  EXPECT_THROW(mixed_norm(Field::constant(g, 1.0), 0.5, 2.0), InvalidArgument);
}

TEST(Field, WindowAndChannels) {
  const Grid g = make_grid(1, 16, 1.0, 8, 1.0);
  const Field f = oracle::noise(g, 9, 2);
  const Field w = f.window(2, 3);
  EXPECT_EQ(w.grid().nt, 3);
  EXPECT_DOUBLE_EQ(w.grid().t0, g.time(2));
  EXPECT_EQ(w.at(1, 5, 1), f.at(3, 5, 1));
  const Field c = f.channel(1);
  EXPECT_EQ(c.at(4, 7), f.at(4, 7, 1));
  EXPECT_THROW(Field(g, 1, std::vector<double>(g.samples(), std::nan(""))), NumericalError);
}
