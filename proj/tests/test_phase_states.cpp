#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasebeam/phase_states.hpp"

namespace pb = phasebeam;
using pb::Family;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<pb::StructureSpec> specs_for(int ts) {
  return {pb::build_structure(Family::PeggBarnett, ts), pb::build_structure(Family::KappaNeg, ts),
          pb::build_structure(Family::KappaPos, ts, 0.5)};
}

pb::FockVector random_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  pb::CVector v(d);
  for (auto& z : v) z = {g(rng), g(rng)};
  return pb::FockVector(v);
}

}  // namespace

TEST(PhaseLabel, ReducesModDimension) {
  EXPECT_EQ(pb::PhaseLabel(5, 0.0, 3).m(), 2);
  EXPECT_EQ(pb::PhaseLabel(-1, 0.0, 3).m(), 2);
  EXPECT_NEAR(pb::PhaseLabel(1, 0.0, 3).theta(), 2 * pi / 3, 1e-15);
}

TEST(PhaseState, QubitAtZero) {
  const auto v = pb::phase_state(pb::build_structure(Family::PeggBarnett, 1), 0, 0.0);
  EXPECT_NEAR(v.amp(0).real(), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(v.amp(1).real(), 0.70710678118654752, 1e-15);
  EXPECT_EQ(v.amp(0).imag(), 0.0);
}

TEST(PhaseState, FourierColumnAtZeroPhase) {
  const auto v = pb::phase_state(pb::build_structure(Family::PeggBarnett, 2), 1, 0.0);
  for (int n = 0; n < 3; ++n) {
    const pb::Complex want = std::polar(1.0 / std::sqrt(3.0), 2 * pi * n / 3);
    EXPECT_NEAR(std::abs(v.amp(n) - want), 0.0, 1e-15);
  }
}

TEST(PhaseState, KappaNegAtPi) {
  const auto v = pb::phase_state(pb::build_structure(Family::KappaNeg, 2), 0, pi);
  const double c = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(v.amp(0) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v.amp(1) + c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v.amp(2) + c), 0.0, 1e-15);
}

TEST(PhaseState, EquiprobableAndNormalized) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phi(-20, 20);
  for (int ts = 1; ts <= 10; ++ts) {
    for (const auto& s : specs_for(ts)) {
      const long m = static_cast<long>(rng() % 50) - 25;
      const auto v = pb::phase_state(s, m, phi(rng));
      EXPECT_NEAR(v.norm(), 1.0, 1e-12);
      for (const auto& z : v.amp) EXPECT_NEAR(std::abs(z), 1.0 / std::sqrt(ts + 1.0), 1e-12);
    }
  }
}

TEST(PhaseState, ZeroPhaseIsFamilyIndependent) {
  for (int ts = 1; ts <= 8; ++ts) {
    const auto specs = specs_for(ts);
    for (long m = 0; m <= ts; ++m) {
      const auto ref = pb::phase_state(specs[0], m, 0.0);
      for (const auto& s : specs) EXPECT_EQ(pb::max_abs_diff(pb::phase_state(s, m, 0.0).amp, ref.amp), 0.0);
    }
  }
}

TEST(PhaseOperator, EigenvalueRelation) {
  for (int ts = 1; ts <= 10; ++ts) {
    for (const auto& s : specs_for(ts)) {
      for (long m = 0; m <= ts; ++m) {
        const double phi = 0.37 * (m + 1);
        const auto v = pb::phase_state(s, m, phi);
        const pb::CVector want = std::polar(1.0, pb::PhaseLabel(m, phi, s.dim()).theta()) * v.amp;
        EXPECT_LT(pb::max_abs_diff(pb::apply_phase_operator(s, phi, v).amp, want), 1e-12);
      }
    }
  }
  const auto s = pb::build_structure(Family::KappaNeg, 2);
  const auto w = pb::apply_phase_operator(s, 1.0, pb::phase_state(s, 1, 1.0));
  EXPECT_NEAR(std::arg(w.amp(0) / pb::phase_state(s, 1, 1.0).amp(0)), 2 * pi / 3, 1e-12);
}

TEST(PhaseOperator, PreservesNormOfArbitraryVectors) {
  std::mt19937_64 rng(5);
  const auto s = pb::build_structure(Family::KappaPos, 5, 0.9);
  for (int i = 0; i < 20; ++i) {
    const auto v = random_vector(s.dim(), rng);
    EXPECT_NEAR(pb::apply_phase_operator(s, 1.3, v).norm(), v.norm(), 1e-12);
  }
}

TEST(PhaseOperator, DimensionMismatch) {
  const auto s = pb::build_structure(Family::KappaNeg, 2);
  try {
    pb::apply_phase_operator(s, 0.0, pb::FockVector(pb::CVector::Zero(4)));
    FAIL();
  } catch (const pb::Error& e) {
    EXPECT_EQ(e.code(), pb::Errc::DimensionMismatch);
  }
}

TEST(Evolution, LabelsAndVectorsAgree) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int ts = 1; ts <= 10; ++ts) {
    for (const auto& s : specs_for(ts)) {
      const long m = static_cast<long>(rng() % s.dim());
      const double phi = u(rng), t = u(rng);
      const auto label = pb::evolve(s, pb::PhaseLabel(m, phi, s.dim()), t);
      EXPECT_EQ(label.m(), m);
      EXPECT_DOUBLE_EQ(label.phi(), phi + t);
      EXPECT_LT(pb::max_abs_diff(pb::evolve_vector(s, pb::phase_state(s, m, phi), t).amp,
                                 pb::phase_state(s, label).amp),
                1e-12);
    }
  }
}

TEST(Evolution, IdentityAndAdditivity) {
  std::mt19937_64 rng(13);
  const auto s = pb::build_structure(Family::KappaNeg, 4);
  const auto v = random_vector(s.dim(), rng);
  EXPECT_EQ(pb::max_abs_diff(pb::evolve_vector(s, v, 0.0).amp, v.amp), 0.0);
  const auto two_step = pb::evolve_vector(s, pb::evolve_vector(s, v, 0.4), 1.1);
  EXPECT_LT(pb::max_abs_diff(two_step.amp, pb::evolve_vector(s, v, 1.5).amp), 1e-12);
  EXPECT_NEAR(pb::evolve_vector(s, v, 3.3).norm(), v.norm(), 1e-12);

  const auto moved = pb::evolve_vector(s, pb::phase_state(s, 0, 0.0), pi);
  EXPECT_LT(pb::max_abs_diff(moved.amp, pb::phase_state(s, 0, pi).amp), 1e-12);
}

TEST(Overlap, DirectBasics) {
  std::mt19937_64 rng(17);
  const auto a = pb::phase_state(pb::build_structure(Family::KappaNeg, 3), 1, 0.4);
  EXPECT_NEAR(std::abs(pb::overlap_direct(a, a) - 1.0), 0.0, 1e-15);
  const auto x = random_vector(5, rng), y = random_vector(5, rng);
  EXPECT_LT(std::abs(pb::overlap_direct(x, y) - std::conj(pb::overlap_direct(y, x))), 1e-13);
  EXPECT_THROW(pb::overlap_direct(x, random_vector(4, rng)), pb::Error);
}

TEST(Overlap, OrthonormalAtFixedPhase) {
  const auto s = pb::build_structure(Family::KappaNeg, 2);
  for (long m = 0; m < 3; ++m) {
    for (long m2 = 0; m2 < 3; ++m2) {
      const auto g = pb::overlap_direct(pb::phase_state(s, m, 0.8), pb::phase_state(s, m2, 0.8));
      EXPECT_NEAR(std::abs(g - (m == m2 ? 1.0 : 0.0)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(pb::overlap_closed(s, m, 0.8, m2, 0.8) - (m == m2 ? 1.0 : 0.0)), 0.0, 1e-12);
    }
  }
}

TEST(Overlap, ClosedFormKappaNegHalfTurn) {
  // F = [0, 1, 1], phi - phi' = pi: (1/3)(1 + 2 e^{-i pi}) = -1/3.
  const auto s = pb::build_structure(Family::KappaNeg, 2);
  const auto g = pb::overlap_closed(s, 1, pi, 1, 0.0);
  EXPECT_NEAR(g.real(), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(g.imag(), 0.0, 1e-15);
}

TEST(Overlap, ClosedFormMatchesDirect) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> phi(0, 4 * pi);
  for (int ts = 1; ts <= 10; ++ts) {
    for (const auto& s : specs_for(ts)) {
      for (int i = 0; i < 100; ++i) {
        const long m = static_cast<long>(rng() % 40) - 20, m2 = static_cast<long>(rng() % 40) - 20;
        const double p = phi(rng), p2 = phi(rng);
        const auto direct = pb::overlap_direct(pb::phase_state(s, m, p), pb::phase_state(s, m2, p2));
        ASSERT_LT(std::abs(pb::overlap_closed(s, m, p, m2, p2) - direct), 1e-12);
      }
    }
  }
}

TEST(Closure, SumsToIdentity) {
  const auto s1 = pb::build_structure(Family::PeggBarnett, 1);
  EXPECT_LT(pb::max_abs_diff(pb::closure_matrix(s1, 0.0), pb::CMatrix::Identity(2, 2)), 1e-15);
  const auto s3 = pb::build_structure(Family::KappaNeg, 3);
  EXPECT_LT(pb::max_abs_diff(pb::closure_matrix(s3, 2.5), pb::CMatrix::Identity(4, 4)), 1e-12);
  for (int ts = 1; ts <= 10; ++ts) {
    for (const auto& s : specs_for(ts)) {
      EXPECT_LT(pb::max_abs_diff(pb::closure_matrix(s, 1.7 * ts), pb::CMatrix::Identity(ts + 1, ts + 1)), 1e-12);
    }
  }
}
