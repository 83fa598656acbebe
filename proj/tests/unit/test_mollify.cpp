#include <onsager/error.hpp>
#include <onsager/mollify.hpp>
#include <onsager/parallel.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "oracles.hpp"

using namespace onsager;

TEST(Kernel, ConstantMatchesQuadrature) {
  for (int d : {1, 2, 3}) EXPECT_NEAR(mollifier_constant(d), oracle::mollifier_constant(d), 1e-10) << d;
  EXPECT_NEAR(mollifier_constant(1), 2.2523, 1e-4);
}

TEST(Kernel, ValuesAndSymmetry) {
  EXPECT_EQ(kernel_value(0.25, 0.25), 0.0);
  EXPECT_EQ(kernel_value(-0.3, 0.25), 0.0);
  EXPECT_NEAR(kernel_value(0.0, 1.0), mollifier_constant(1) * std::exp(-1.0), 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), eps = 0.5 + std::abs(u(rng));
    EXPECT_EQ(kernel_value(x, eps), kernel_value(-x, eps));
  }
  const double x2[2] = {0.1, -0.2};
  EXPECT_NEAR(kernel_value(std::span<const double>(x2), 0.5),
              mollifier_constant(2) / 0.25 * std::exp(-1.0 / (1.0 - 0.2)), 1e-12);
}

TEST(Mollifier, ExactUnitMass) {
  for (int d : {1, 2})
    for (int n : {32, 64, 256}) {
      const Grid g = make_grid(d, n, 1.0, 16, 1.0);
      for (double eps = 2.0 / n; eps < 0.4; eps *= 1.37) {
        EXPECT_EQ(Mollifier::space(g, eps).mass(), 1.0);
        if (eps >= 2.0 / 16 && eps < 0.5) EXPECT_EQ(Mollifier::spacetime(g, eps).mass(), 1.0);
      }
    }
}

TEST(Mollifier, SupportAndSymmetry) {
  const Grid g = make_grid(2, 64, 1.0, 32, 1.0);
  for (const Mollifier& m : {Mollifier::space(g, 5.5 / 64), Mollifier::spacetime(g, 4.0 / 32)}) {
    std::set<std::tuple<int, int, int>> seen;
    for (const Tap& t : m.taps()) {
      EXPECT_GE(t.weight, 0.0);
      const double r = std::hypot(t.x * g.dx(), t.y * g.dx(), t.t * g.dt);
      EXPECT_LT(r, m.epsilon());
      seen.insert({t.t, t.x, t.y});
    }
    for (const Tap& t : m.taps()) EXPECT_TRUE(seen.count({-t.t, -t.x, -t.y}));
  }
}

TEST(MollifySpace, ConstantIsFixedPoint) {
  for (int d : {1, 2}) {
    const Grid g = make_grid(d, 64, 1.0, 3, 1.0);
    const Field c = Field::constant(g, 0.7281, 2);
    for (double eps : {2.0 / 64, 0.1, 0.3})
      for (auto path : {ConvolutionPath::direct, ConvolutionPath::spectral}) {
        const Field out = mollify_space(c, eps, path);
        for (double v : out.data()) EXPECT_EQ(v, 0.7281);
      }
  }
}

TEST(MollifySpace, FourierModeScaledBySymbol) {
  const Grid g = make_grid(1, 64);
  const double eps = 6.0 / 64;
  const Mollifier m = Mollifier::space(g, eps);
  for (int k : {1, 3, 7}) {
    const Field f = generate(g, spec::fourier_mode(k, 1.0, 0.3));
    const Field out = mollify_space(f, eps);
    const Field dense = oracle::dense_mollify(f, eps);
    const double s = m.symbol(k);
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
    EXPECT_LT(oracle::max_abs_diff(out, dense), 1e-12);
    EXPECT_LT(oracle::max_abs_diff(out, s * f), 1e-12);
  }
}

TEST(MollifySpace, MatchesDenseOracle2d) {
  const Field f = oracle::noise(make_grid(2, 32), 17, 2);
  for (double eps : {2.0 / 32, 4.0 / 32, 9.0 / 32}) {
    EXPECT_LT(oracle::max_abs_diff(mollify_space(f, eps, ConvolutionPath::direct), oracle::dense_mollify(f, eps)), 1e-12);
    EXPECT_LT(oracle::max_abs_diff(mollify_space(f, eps, ConvolutionPath::spectral), oracle::dense_mollify(f, eps)), 1e-12);
  }
}

TEST(MollifySpace, DirectAndSpectralAgree) {
  for (int d : {1, 2})
    for (int n : {32, 128}) {
      const Field f = oracle::noise(make_grid(d, n, 1.0, 2, 1.0), 7 + n);
      for (double eps = 2.0 / n; eps < 0.45; eps *= 1.9)
        EXPECT_LT(oracle::max_abs_diff(mollify_space(f, eps, ConvolutionPath::direct),
                                       mollify_space(f, eps, ConvolutionPath::spectral)),
                  1e-10)
            << d << " " << n << " " << eps;
    }
}

TEST(MollifySpace, IndicatorLocality) {
  const Grid g = make_grid(1, 256);
  const Field f = generate(g, spec::indicator(0.25, 0.75));
  const double eps = 0.05;
  const Field out = mollify_space(f, eps);
  for (int j = 0; j < 256; ++j) {
    const double x = j * g.dx(), v = out.at(0, j);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    if (x > 0.25 + eps && x < 0.75 - eps) EXPECT_NEAR(v, 1.0, 1e-14);
    if (x < 0.25 - eps || x > 0.75 + eps) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(MollifySpace, ContractionInLq) {
  const Grid g = make_grid(1, 128);
  for (std::uint64_t s = 0; s < 25; ++s) {
    const Field f = oracle::noise(g, s);
    const Field out = mollify_space(f, 0.05 + 0.01 * (s % 5));
    for (double q : {1.0, 2.0, 3.0, kInfinity}) EXPECT_LE(lp_norm(out, q), lp_norm(f, q) * (1 + 1e-14));
  }
}

TEST(MollifySpace, ConvergenceRateForHolderField) {
  const double alpha = 0.4;
  const Field f = generate(make_grid(1, 4096), spec::holder(alpha, 21));
  std::vector<double> err, grad;
  const auto eps = std::vector<double>{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  for (double e : eps) {
    const Field fe = mollify_space(f, e);
    err.push_back(lp_norm(fe - f, 2.0));
    grad.push_back(lp_norm(gradient(fe, 0), 2.0) * std::pow(e, 1.0 - alpha));
  }
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_GE(err[i - 1] / err[i], std::pow(2.0, alpha - 0.15)) << i;
  EXPECT_LE(*std::max_element(grad.begin(), grad.end()) / *std::min_element(grad.begin(), grad.end()), 4.0);
}

TEST(MollifySpace, RejectsUnresolvedScale) {
  const Field f = Field::constant(make_grid(1, 64), 1.0);
  EXPECT_THROW(mollify_space(f, 1.9 / 64), InvalidArgument);
  EXPECT_THROW(mollify_space(f, 0.5), InvalidArgument);
}

TEST(MollifySpace, IndependentOfThreadCount) {
  const Field f = oracle::noise(make_grid(2, 64, 1.0, 8, 1.0), 5);
  set_thread_count(1);
  const Field a = mollify_space(f, 0.2, ConvolutionPath::spectral);
  set_thread_count(4);
  const Field b = mollify_space(f, 0.2, ConvolutionPath::spectral);
  set_thread_count(1);
  EXPECT_TRUE(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
}

TEST(MollifySpaceTime, InteriorWindow) {
  const Grid g = make_grid(1, 32, 1.0, 32, 1.0);
  const auto [first, count] = interior_window(g, 0.125);
  EXPECT_EQ(first, 4);
  EXPECT_EQ(count, 24);
  const Field out = mollify_spacetime(Field::constant(g, -1.5), 0.125);
  EXPECT_EQ(out.grid().nt, 24);
  EXPECT_DOUBLE_EQ(out.grid().t0, g.time(4));
  for (double v : out.data()) EXPECT_EQ(v, -1.5);
}

TEST(MollifySpaceTime, SeparableModesMatchDenseOracle) {
  const Grid g = make_grid(1, 32, 1.0, 32, 1.0);
  const Field f = generate(g, spec::product({spec::fourier_mode(1, 1.0, 0.2), spec::fourier_mode(0, 1.0, 0.5, 0, 1)}));
  for (double eps : {2.0 / 32, 3.0 / 32, 5.0 / 32}) {
    const Field dense = oracle::dense_mollify_spacetime(f, eps);
    EXPECT_LT(oracle::max_abs_diff(mollify_spacetime(f, eps, ConvolutionPath::direct), dense), 1e-10);
    EXPECT_LT(oracle::max_abs_diff(mollify_spacetime(f, eps, ConvolutionPath::spectral), dense), 1e-10);
  }
}

TEST(MollifySpaceTime, FiniteTimeSupport) {
  const Grid g = make_grid(1, 32, 1.0, 64, 1.0);
  Field f = oracle::noise(g, 4);
  std::vector<double> data(f.data().begin(), f.data().end());
  const int cut = 20;
  std::fill(data.begin() + cut * 32, data.end(), 0.0);
  f = Field(g, 1, data);
  const double eps = 5.0 / 64;
  const Field out = mollify_spacetime(f, eps);
  for (int t = 0; t < out.grid().nt; ++t)
    if (out.grid().time(t) > g.time(cut - 1) + eps)
      for (int j = 0; j < 32; ++j) EXPECT_NEAR(out.at(t, j), 0.0, 1e-14);
}

TEST(MollifySpaceTime, RejectsNoInterior) {
  const Field f = Field::constant(make_grid(1, 64, 1.0, 16, 1.0), 1.0);
  EXPECT_THROW(mollify_spacetime(f, 0.5), InvalidArgument);
  EXPECT_THROW(mollify_spacetime(f, 1.0 / 16), InvalidArgument);
  EXPECT_THROW(mollify_spacetime(Field::constant(make_grid(1, 64), 1.0), 0.1), InvalidArgument);
}

TEST(Derivatives, SpectralAndCentered) {
  const Grid g = make_grid(1, 64, 1.0, 16, 1.0);
  const Field f = generate(g, spec::fourier_mode(3));
  const Field df = gradient(f, 0);
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(df.at(0, j), 6 * M_PI * std::cos(6 * M_PI * j / 64.0), 1e-11);
  std::vector<double> lin;
  for (int t = 0; t < 16; ++t)
    for (int j = 0; j < 64; ++j) lin.push_back(2.0 * g.time(t) + j);
  const Field dt = time_derivative(Field(g, 1, lin));
  EXPECT_EQ(dt.grid().nt, 14);
  for (double v : dt.data()) EXPECT_NEAR(v, 2.0, 1e-12);
}
