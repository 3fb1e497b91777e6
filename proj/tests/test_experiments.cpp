#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "phasebeam/experiments.hpp"

namespace pb = phasebeam;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Linspace, InclusiveEndpoints) {
  const auto g = pb::linspace(0.0, 1.0, 101);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[50], 0.5);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_EQ(pb::linspace(2.0, 3.0, 1), std::vector<double>{2.0});
  EXPECT_THROW(pb::linspace(0, 1, 0), pb::Error);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(pb::parallel_for(100, 4,
                                [](std::size_t i) {
                                  if (i == 37) throw pb::Error(pb::Errc::NumericalConsistency, "boom");
                                }),
               pb::Error);
}

TEST(SweepR2Phi, QubitRowsArePhaseIndependent) {
  const auto t = pb::sweep_r2_phi(1, {0.0, pi}, {0.0, 0.5, 1.0});
  ASSERT_EQ(t.values.size(), 6u);
  ASSERT_EQ(t.axes[0].name, "phi");
  ASSERT_EQ(t.axes[1].name, "r2");
  const double want[] = {0, 0.125, 0, 0, 0.125, 0};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(t.values[i], want[i], 1e-15);
  EXPECT_EQ(t.meta.two_s, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(*t.meta.kappa, -1.0);
}

TEST(SweepR2Phi, QutritMaximumAtBalancedHalfTurn) {
  const auto grid = pb::sweep_r2_phi(2, pb::linspace(0, 2 * pi, 33), pb::linspace(0, 1, 21));
  const auto peak = pb::sweep_r2_phi(2, {pi}, {0.5});
  for (double v : grid.values) EXPECT_LE(v, peak.values[0] + 1e-15);
}

TEST(SweepR2Phi, EndpointsArePure) {
  const auto t = pb::sweep_r2_phi(4, pb::linspace(0, 2 * pi, 9), {0.0, 1.0});
  for (double v : t.values) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(SweepR2Phi, RejectsBadGrids) {
  EXPECT_THROW(pb::sweep_r2_phi(2, {}, {0.5}), pb::Error);
  EXPECT_THROW(pb::sweep_r2_phi(2, {0.0}, {1.5}), pb::Error);
}

TEST(SweepR2Phi, ClosedFormPathAgrees) {
  pb::SweepOptions opts;
  opts.method = pb::EntropyMethod::ClosedForm;
  const auto closed = pb::sweep_r2_phi(3, pb::linspace(0, 2 * pi, 8), pb::linspace(0, 1, 6), opts);
  const auto oracle = pb::sweep_r2_phi(3, pb::linspace(0, 2 * pi, 8), pb::linspace(0, 1, 6));
  for (std::size_t i = 0; i < closed.values.size(); ++i) EXPECT_NEAR(closed.values[i], oracle.values[i], 1e-10);
}

TEST(Sweeps, SerialAndParallelAreBitIdentical) {
  pb::SweepOptions serial, parallel;
  serial.serial = true;
  parallel.threads = 4;
  const auto phi = pb::linspace(0, 2 * pi, 17);
  const auto a = pb::sweep_r2_phi(3, phi, pb::linspace(0, 1, 11), serial);
  const auto b = pb::sweep_r2_phi(3, phi, pb::linspace(0, 1, 11), parallel);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(pb::sweep_s_balanced(12, {0.0, pi}, serial).values, pb::sweep_s_balanced(12, {0.0, pi}, parallel).values);
}

TEST(Sweeps, ThreadCountFromEnvironment) {
  ::setenv("PHASEBEAM_THREADS", "3", 1);
  EXPECT_EQ(pb::worker_count({}), 3u);
  ::setenv("PHASEBEAM_THREADS", "zero", 1);
  EXPECT_GE(pb::worker_count({}), 1u);
  ::unsetenv("PHASEBEAM_THREADS");
  pb::SweepOptions opts;
  opts.serial = true;
  opts.threads = 8;
  EXPECT_EQ(pb::worker_count(opts), 1u);
}

TEST(SweepPhiBalanced, RowShapes) {
  const auto phi = pb::linspace(0, 2 * pi, 64);
  const auto t = pb::sweep_phi_balanced({1, 2, 3}, phi);
  ASSERT_EQ(t.values.size(), 3 * phi.size());
  EXPECT_EQ(t.axes[0].name, "two_s");
  for (std::size_t j = 0; j < phi.size(); ++j) EXPECT_NEAR(t.values[j], 0.125, 1e-15);
  // qutrit row: S(phi) = S(2 pi - phi) and the grid is mirror symmetric up to rounding
  for (std::size_t j = 0; j < phi.size(); ++j) {
    EXPECT_NEAR(t.values[phi.size() + j], t.values[2 * phi.size() - 1 - j], 1e-10);
  }
  ASSERT_EQ(t.meta.fixed.size(), 1u);
  EXPECT_EQ(t.meta.fixed[0].first, "r2");
}

TEST(SweepPhiBalanced, QuartitRowIsNotMonotone) {
  const auto t = pb::sweep_phi_balanced({3}, pb::linspace(0, 2 * pi, 16));
  int changes = 0;
  for (std::size_t j = 2; j < t.values.size(); ++j) {
    const double a = t.values[j - 1] - t.values[j - 2], b = t.values[j] - t.values[j - 1];
    changes += (a > 0) != (b > 0);
  }
  EXPECT_GE(changes, 2);
}

TEST(SweepSBalanced, GrowthAndBounds) {
  const auto t = pb::sweep_s_balanced(20, {0.0, pi});
  ASSERT_EQ(t.values.size(), 40u);
  EXPECT_EQ(t.axes[0].name, "phi");
  EXPECT_EQ(t.axes[1].name, "two_s");
  for (std::size_t row = 0; row < 2; ++row) {
    EXPECT_NEAR(t.values[row * 20], 0.125, 1e-15);
    EXPECT_GT(t.values[row * 20 + 19], t.values[row * 20 + 1]);
    for (int ts = 1; ts <= 20; ++ts) EXPECT_LE(t.values[row * 20 + ts - 1], 1.0 - 1.0 / (ts + 1));
  }
  EXPECT_FALSE(t.meta.kappa.has_value());
}

TEST(SweepSBalanced, CustomFamilyNeedsMatchingTable) {
  pb::SweepOptions opts;
  opts.family.family = pb::Family::CustomF;
  opts.family.custom_F = {0, 1, 1, 0};
  EXPECT_THROW(pb::sweep_s_balanced(3, {0.0}, opts), pb::Error);
  EXPECT_NO_THROW(pb::sweep_r2_phi(2, {0.0}, {0.5}, opts));
}
