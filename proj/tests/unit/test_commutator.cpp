#include <onsager/commutator.hpp>
#include <onsager/error.hpp>
#include <onsager/parallel.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace onsager;

TEST(Cet, ConstantFactorGivesZero) {
  const Grid g = make_grid(1, 128);
  const Field c = Field::constant(g, 2.5);
  const Field h = oracle::noise(g, 1);
  const Field ch = cet_commutator(c, h, 0.05), hc = cet_commutator(h, c, 0.05);
  for (double v : ch.data()) EXPECT_EQ(v, 0.0);
  for (double v : hc.data()) EXPECT_EQ(v, 0.0);
}

TEST(Cet, ModeProductMatchesDenseOracle) {
  const Field f = generate(make_grid(1, 64), spec::fourier_mode(1));
  for (double eps : {3.0 / 64, 10.0 / 64}) {
    const Field expect = oracle::dense_mollify(f * f, eps) - oracle::dense_mollify(f, eps) * oracle::dense_mollify(f, eps);
    EXPECT_LT(oracle::max_abs_diff(cet_commutator(f, f, eps), expect), 1e-10);
  }
}

TEST(Cet, SymmetricAndBilinear) {
  const Grid g = make_grid(2, 32, 1.0, 4, 1.0);
  const Field a = oracle::noise(g, 3), b = oracle::noise(g, 4);
  const double eps = 5.0 / 32;
  const Field ab = cet_commutator(a, b, eps);
  const Field ba = cet_commutator(b, a, eps);
  EXPECT_TRUE(std::equal(ab.data().begin(), ab.data().end(), ba.data().begin()));
  const Field scaled = cet_commutator(1.5 * a, -4.0 * b, eps);
  EXPECT_LT(oracle::max_abs_diff(scaled, -6.0 * ab), 1e-12 * 6.0 * oracle::max_abs(ab));
}

TEST(Cet, SpaceTimeModeBilinear) {
  const Grid g = make_grid(1, 32, 1.0, 32, 1.0);
  const Field a = oracle::noise(g, 5), b = oracle::noise(g, 6);
  const Field ab = cet_commutator(a, b, 4.0 / 32, MollifyMode::spacetime);
  EXPECT_EQ(ab.grid().nt, 24);
  EXPECT_LT(oracle::max_abs_diff(cet_commutator(2.0 * a, b, 4.0 / 32, MollifyMode::spacetime), 2.0 * ab),
            1e-12 * oracle::max_abs(ab));
}

TEST(CetIdentity, RandomFields) {
  for (int d : {1, 2}) {
    const Grid g = make_grid(d, 32);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Field f = oracle::noise(g, 10 + s), h = oracle::noise(g, 20 + s);
      for (int cells : {4, 8}) {
        const double scale = oracle::max_abs(f) * oracle::max_abs(h);
        EXPECT_LE(cet_split_check(f, h, cells * g.dx()), 1e-11 * scale) << d << " " << cells;
      }
    }
  }
}

TEST(CetIdentity, DegenerateInputs) {
  const Grid g = make_grid(1, 32);
  const Field f = oracle::noise(g, 1);
  EXPECT_EQ(cet_split_check(f, Field::constant(g, 0.0), 0.25), 0.0);
  EXPECT_EQ(cet_split_check(Field::constant(g, 3.0), f, 0.25), 0.0);
}

TEST(Cet, RejectsMismatch) {
  EXPECT_THROW(cet_commutator(Field::constant(make_grid(1, 32), 1.0), Field::constant(make_grid(1, 64), 1.0), 0.1),
               InvalidArgument);
  EXPECT_THROW(cet_commutator(Field::constant(make_grid(1, 32), 1.0), Field::constant(make_grid(1, 32), 1.0), 0.01),
               InvalidArgument);
}

TEST(Lions, ConstantFactorGivesZero) {
  const Grid g = make_grid(1, 64, 1.0, 32, 1.0);
  const Field c = Field::constant(g, -0.75), h = oracle::noise(g, 2);
  for (Axis a : {Axis::x, Axis::t})
  {
    const Field out = lions_commutator(c, h, 4.0 / 32, a, MollifyMode::spacetime);
    for (double v : out.data()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Lions, ConstantPartnerIsModeDamping) {
  const Grid g = make_grid(1, 64);
  const double c = 1.75, eps = 6.0 / 64;
  for (int k : {1, 4}) {
    const Field f = generate(g, spec::fourier_mode(k, 1.0, 0.4));
    const Field out = lions_commutator(f, Field::constant(g, c), eps, Axis::x);
    const double s = Mollifier::space(g, eps).symbol(k);
    for (int j = 0; j < 64; ++j) {
      const double expect = c * (s - 1.0) * 2 * M_PI * k * std::cos(2 * M_PI * k * j / 64.0 + 0.4);
      EXPECT_NEAR(out.at(0, j), expect, 1e-10);
    }
  }
}

TEST(Lions, Bilinear) {
  const Grid g = make_grid(2, 32);
  const Field a = generate(g, spec::fourier_mode(1, 1.0, 0.0, 2)), b = oracle::noise(g, 8);
  const Field base = lions_commutator(a, b, 5.0 / 32, Axis::y);
  EXPECT_LT(oracle::max_abs_diff(lions_commutator(3.0 * a, 0.5 * b, 5.0 / 32, Axis::y), 1.5 * base),
            1e-12 * 1.5 * oracle::max_abs(base));
}

TEST(Lions, RejectsMissingAxis) {
  const Field f = Field::constant(make_grid(1, 32), 1.0);
  EXPECT_THROW(lions_commutator(f, f, 0.1, Axis::t), InvalidArgument);
  EXPECT_THROW(lions_commutator(f, f, 0.1, Axis::y), InvalidArgument);
}

TEST(Sweep, CetRateAtModerateResolution) {
  const Grid g = make_grid(1, 4096);
  const Field a = generate(g, spec::holder(0.4, 1)), b = generate(g, spec::holder(0.4, 2));
  const auto r = cet_sweep(a, b, dyadic_epsilons(3, 8), {1.5, 1.5});
  ASSERT_EQ(r.fit.status, RateStatus::ok);
  EXPECT_NEAR(r.fit.slope, 0.8, 0.15);
}

TEST(Sweep, ProductConvergesForSmoothFields) {
  const Grid g = make_grid(1, 1024);
  const Field f = generate(g, spec::fourier_mode(1)), h = generate(g, spec::fourier_mode(2, 1.0, 0.3));
  std::vector<double> eps = dyadic_epsilons(3, 7), norms;
  for (double e : eps) norms.push_back(lp_norm(mollify_space(f * h, e) - f * h, 2.0));
  EXPECT_GE(rate_fit(eps, norms).slope, 1.0);
}

TEST(Sweep, ReportShapeAndDeterminism) {
  const Grid g = make_grid(1, 512);
  const Field a = generate(g, spec::holder(0.5, 3)), b = generate(g, spec::holder(0.5, 4));
  set_thread_count(1);
  const auto r1 = cet_sweep(a, b, dyadic_epsilons(2, 6), {2.0, 2.0});
  set_thread_count(3);
  const auto r3 = cet_sweep(a, b, dyadic_epsilons(2, 6), {2.0, 2.0});
  set_thread_count(1);
  EXPECT_EQ(r1.norms, r3.norms);
  for (std::size_t i = 1; i < r1.epsilons.size(); ++i) EXPECT_LT(r1.epsilons[i], r1.epsilons[i - 1]);
  for (double n : r1.norms) EXPECT_GE(n, 0.0);
  const Table t = report_table(r1);
  EXPECT_EQ(t.header, (std::vector<std::string>{"epsilon", "norm", "p", "q", "kind"}));
  EXPECT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(report_json(r1)["kind"], "cet");
  EXPECT_THROW(cet_sweep(a, b, {0.1, 0.05}, {}), InvalidArgument);
  EXPECT_THROW(cet_sweep(a, b, {0.05, 0.1, 0.2}, {}), InvalidArgument);
}
