#include <onsager/error.hpp>
#include <onsager/field_io.hpp>
#include <onsager/fit.hpp>
#include <onsager/table.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace onsager;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "onsager-unit";
  fs::create_directories(dir);
  return dir / name;
}

bool same(const Field& a, const Field& b) {
  return a.grid() == b.grid() && a.components() == b.components() &&
         std::equal(a.data().begin(), a.data().end(), b.data().begin(), b.data().end());
}

}  // namespace

TEST(FieldIo, BinaryRoundTrip) {
  const Field f = oracle::noise(make_spacetime_grid(2, 16, 2.0, 5, 0.1, 0.3), 4, 2);
  const auto path = scratch("f.bin");
  write_field_binary(f, path);
  EXPECT_TRUE(same(read_field_binary(path), f));
}

TEST(FieldIo, CsvRoundTripIsExact) {
  const Field f = oracle::noise(make_grid(1, 32, 1.0, 3, 0.75), 8);
  const auto path = scratch("f.csv");
  write_field_csv(f, path);
  EXPECT_TRUE(same(read_field_csv(path), f));
}

TEST(FieldIo, RejectsForeignFile) {
  const auto path = scratch("junk.bin");
  std::ofstream(path) << "not a field";
  EXPECT_THROW(read_field_binary(path), InvalidArgument);
}

TEST(Table, CsvQuoting) {
  Table t{{"epsilon", "kind"}, {}};
  t.add_row({0.125, std::string("cet")});
  t.add_row({std::int64_t{3}, std::string("a,\"b\"")});
  std::ostringstream os;
  write_csv(t, os);
  EXPECT_EQ(os.str(), "epsilon,kind\n0.125,cet\n3,\"a,\"\"b\"\"\"\n");
}

TEST(Table, FormatRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(kInfinity), "inf");
}

TEST(Table, EmptySeriesRejected) {
  Table t{{"t", "E"}, {}};
  EXPECT_THROW(export_csv(t, scratch("empty.csv")), InvalidArgument);
}

TEST(RateFit, ExactPowerLaw) {
  std::vector<double> eps, norms;
  for (int k = 3; k <= 9; ++k) {
    eps.push_back(std::ldexp(1.0, -k));
    norms.push_back(eps.back() * eps.back());
  }
  const RateFit r = rate_fit(eps, norms);
  EXPECT_EQ(r.status, RateStatus::ok);
  EXPECT_NEAR(r.slope, 2.0, 1e-12);
  EXPECT_NEAR(r.r2, 1.0, 1e-12);
}

TEST(RateFit, ConstantNormsGiveZeroSlope) {
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625}, norms(4, 3.0);
  EXPECT_NEAR(rate_fit(eps, norms).slope, 0.0, 1e-14);
}

TEST(RateFit, ZerosDroppedAndCounted) {
  const std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  EXPECT_EQ(rate_fit(eps, std::vector<double>(4, 0.0)).status, RateStatus::exact);
  const RateFit r = rate_fit(eps, std::vector<double>{1.0, 0.0, 0.0, 0.5});
  EXPECT_EQ(r.status, RateStatus::insufficient);
  EXPECT_EQ(r.dropped_zeros, 2);
}
