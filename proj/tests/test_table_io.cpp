#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "phasebeam/table_io.hpp"

namespace pb = phasebeam;

namespace {

pb::SweepTable single_cell() {
  pb::SweepTable t;
  t.axes = {{"phi", {std::numbers::pi}}, {"r2", {0.5}}};
  t.values = {0.44880150693034389};
  t.meta.two_s = {2};
  t.meta.kappa = -0.5;
  return t;
}

}  // namespace

TEST(Csv, SingleCellIsTwoLines) {
  std::ostringstream out;
  pb::emit_csv(single_cell(), out);
  EXPECT_EQ(out.str(), "phi,r2,S\n3.1415926535897931,0.5,0.44880150693034387\n");
}

TEST(Csv, SeventeenDigitsRoundTrip) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(std::stod(pb::format_double17(x)), x);
  }
  EXPECT_EQ(pb::format_double17(0.125), "0.125");
}

TEST(Csv, BalancedQubitRow) {
  const auto t = pb::sweep_phi_balanced({1}, pb::linspace(0, 2 * std::numbers::pi, 5));
  std::ostringstream out;
  pb::emit_csv(t, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "two_s,phi,S");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NEAR(std::stod(line.substr(line.rfind(',') + 1)), 0.125, 1e-15);
  }
  EXPECT_EQ(rows, 5);
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}

TEST(Json, RoundTripIsLossless) {
  const auto t = pb::sweep_r2_phi(3, pb::linspace(0, 2 * std::numbers::pi, 7), pb::linspace(0, 1, 5));
  std::ostringstream out;
  pb::emit_json(t, out);
  const auto back = pb::table_from_json(nlohmann::json::parse(out.str()));
  EXPECT_EQ(back.values, t.values);
  ASSERT_EQ(back.axes.size(), 2u);
  EXPECT_EQ(back.axes[0].values, t.axes[0].values);
  EXPECT_EQ(back.axes[1].name, "r2");
  EXPECT_EQ(back.meta.two_s, std::vector<int>{3});
  EXPECT_EQ(back.meta.family, pb::Family::KappaNeg);
  EXPECT_DOUBLE_EQ(*back.meta.kappa, -1.0 / 3.0);
}

TEST(Json, Layout) {
  const auto j = pb::to_json(single_cell());
  EXPECT_EQ(j["axes"][0]["name"], "phi");
  EXPECT_EQ(j["values"].size(), 1u);
  EXPECT_EQ(j["meta"]["family"], "kappa-neg");
  EXPECT_EQ(j["meta"]["method"], "oracle");
}

TEST(Json, MalformedInputIsIoError) {
  try {
    pb::table_from_json(nlohmann::json::parse(R"({"axes": 3})"));
    FAIL();
  } catch (const pb::Error& e) {
    EXPECT_EQ(e.code(), pb::Errc::Io);
  }
}

TEST(Emit, RejectsInconsistentTable) {
  auto t = single_cell();
  t.values.push_back(0.1);
  std::ostringstream out;
  EXPECT_THROW(pb::emit(t, pb::TableFormat::Csv, out), pb::Error);
}

TEST(Emit, FailedStreamIsIoError) {
  std::ostringstream out;
  out.setstate(std::ios::badbit);
  try {
    pb::emit(single_cell(), pb::TableFormat::Json, out);
    FAIL();
  } catch (const pb::Error& e) {
    EXPECT_EQ(e.code(), pb::Errc::Io);
  }
}
