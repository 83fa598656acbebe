#include <onsager/balance.hpp>
#include <onsager/error.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace onsager;

namespace {

Trajectory run(FieldSpec rho0, FieldSpec v0, int n, double t_end, double every) {
  SimConfig c;
  c.grid = make_grid(1, n);
  c.t_end = t_end;
  c.snapshot_every = every;
  c.rho0 = std::move(rho0);
  c.v0 = std::move(v0);
  return simulate(c);
}

const Trajectory& smooth() {
  static const Trajectory t =
      run(spec::sum({spec::constant(1.0), spec::fourier_mode(1, 0.1)}), spec::constant(0.0), 1024, 0.5, 1.0 / 128);
  return t;
}

}  // namespace

TEST(PhiWindow, Trapezoid) {
  const PhiWindow phi{0.1, 0.9, 0.2};
  EXPECT_EQ(phi(0.05), 0.0);
  EXPECT_DOUBLE_EQ(phi(0.2), 0.5);
  EXPECT_EQ(phi(0.5), 1.0);
  EXPECT_DOUBLE_EQ(phi(0.8), 0.5);
  EXPECT_EQ(phi(0.95), 0.0);
}

TEST(Balance, EquilibriumTermsVanish) {
  const Trajectory t = run(spec::constant(1.3), spec::constant(0.4), 256, 0.5, 1.0 / 64);
  for (MollifyMode mode : {MollifyMode::space, MollifyMode::spacetime}) {
    const auto r = balance_terms(t, 1.0 / 32, std::nullopt, mode);
    EXPECT_LE(std::abs(r.lhs), 1e-12);
    for (double term : r.terms) EXPECT_LE(std::abs(term), 1e-12);
    EXPECT_LE(std::abs(r.pressure_transport_residual), 1e-12);
  }
}

TEST(Balance, SmoothResidualIsSmallAgainstLhs) {
  const auto r = balance_terms(smooth(), 1.0 / 32);
  double sum = 0.0;
  for (double term : r.terms) sum += term;
  EXPECT_NEAR(r.residual, r.lhs - sum, 1e-15);
  EXPECT_GT(std::abs(r.lhs), 0.0);
  EXPECT_LE(std::abs(r.residual), 0.05 * std::abs(r.lhs));
}

TEST(Balance, SmoothTermsShrinkWithEpsilon) {
  const auto a = balance_terms(smooth(), 1.0 / 16);
  const auto b = balance_terms(smooth(), 1.0 / 32);
  for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(b.terms[i]), std::abs(a.terms[i])) << "T" << i + 1;
}

TEST(Balance, DefaultWindowInsideRecord) {
  const auto r = balance_terms(smooth(), 1.0 / 32);
  EXPECT_GT(r.phi.start, 0.0);
  EXPECT_LT(r.phi.stop, 0.5);
  EXPECT_DOUBLE_EQ(r.phi.ramp, std::max(1.0 / 32, 4.0 / 128));
  const auto st = balance_terms(smooth(), 1.0 / 32, std::nullopt, MollifyMode::spacetime);
  EXPECT_GE(st.phi.start, r.phi.start);
}

TEST(Balance, RejectsWindowOutsideRecord) {
  EXPECT_THROW(balance_terms(smooth(), 1.0 / 32, PhiWindow{0.0, 0.5, 0.1}), InvalidArgument);
  EXPECT_THROW(balance_terms(smooth(), 1.0 / 32, PhiWindow{0.1, 0.6, 0.1}), InvalidArgument);
  EXPECT_THROW(balance_terms(smooth(), 1.0 / 2048), InvalidArgument);
}

TEST(Balance, TableAndJson) {
  std::vector<EnergyBalanceReport> rs{balance_terms(smooth(), 1.0 / 16), balance_terms(smooth(), 1.0 / 32)};
  const Table t = balance_table(rs);
  EXPECT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.header.size(), 10u);
  const auto j = to_json(rs[0]);
  EXPECT_TRUE(j.contains("phi"));
  EXPECT_EQ(j["terms"].size(), 6u);
}
