#pragma once

// Randomized invariant suites behind `phasebeam check`. Each check reports the worst deviation
// it saw and the tolerance it was held to.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "phasebeam/algebra.hpp"
#include "phasebeam/entropy.hpp"
#include "phasebeam/numeric.hpp"
#include "phasebeam/phase_states.hpp"
#include "phasebeam/splitter.hpp"

namespace phasebeam {

struct CheckResult {
  std::string suite;
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_error <= tolerance; }
};

/// Positive random F(1..2s) in [0.2, 3), truncated at 2s+1.
inline StructureSpec random_custom_structure(int two_s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::vector<double> F(static_cast<std::size_t>(two_s) + 2, 0.0);
  for (int n = 1; n <= two_s; ++n) F[n] = u(rng);
  return structure_from_F(std::move(F));
}

/// PeggBarnett, KappaNeg, KappaPos(kappa = 0.5) and one random custom table.
inline std::vector<StructureSpec> sample_structures(int two_s, std::mt19937_64& rng) {
  return {build_structure(Family::PeggBarnett, two_s), build_structure(Family::KappaNeg, two_s),
          build_structure(Family::KappaPos, two_s, 0.5), random_custom_structure(two_s, rng)};
}

namespace detail {

class CheckRecorder {
 public:
  CheckRecorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  /// Runs body, which returns the worst error it observed; exceptions count as failures.
  void run(std::string name, double tolerance, const std::function<double()>& body) {
    double err = 0.0;
    try {
      err = body();
    } catch (const std::exception&) {
      err = std::numeric_limits<double>::infinity();
    }
    out_.push_back({suite_, std::move(name), err, tolerance});
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

inline double diag_error(const CMatrix& m, const std::function<double(Eigen::Index)>& expected) {
  double err = 0.0;
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      const Complex want = a == b ? Complex{expected(a), 0.0} : Complex{};
      err = std::max(err, std::abs(m(a, b) - want));
    }
  }
  return err;
}

}  // namespace detail

inline void check_algebra(std::uint64_t seed, std::vector<CheckResult>& out) {
  detail::CheckRecorder rec("algebra", out);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phi_dist(0.0, 4.0 * std::numbers::pi);

  const auto over_specs = [&](const std::function<double(const StructureSpec&, double)>& f) {
    double err = 0.0;
    for (int ts = 1; ts <= 10; ++ts) {
      for (const auto& spec : sample_structures(ts, rng)) err = std::max(err, f(spec, phi_dist(rng)));
    }
    return err;
  };

  rec.run("E unitary", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const CMatrix E = phase_operator(s, phi);
      const CMatrix I = CMatrix::Identity(E.rows(), E.cols());
      return std::max(max_abs_diff(E.adjoint() * E, I), max_abs_diff(E * E.adjoint(), I));
    });
  });
  rec.run("[a-, a+] = G(N)", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const CMatrix am = ladder_minus(s, phi), ap = ladder_plus(s, phi);
      return detail::diag_error(am * ap - ap * am, [&](Eigen::Index n) { return s.G(n); });
    });
  });
  rec.run("a- = E sqrt(F(N))", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      return max_abs_diff(phase_operator(s, phi) * sqrt_F_operator(s), ladder_minus(s, phi));
    });
  });
  rec.run("a+ a- = F(N), a- a+ = F(N+1)", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const CMatrix am = ladder_minus(s, phi), ap = ladder_plus(s, phi);
      return std::max(detail::diag_error(ap * am, [&](Eigen::Index n) { return s.F(n); }),
                      detail::diag_error(am * ap, [&](Eigen::Index n) { return s.F(n + 1); }));
    });
  });
  rec.run("[N, a-] = -a-, [N, a+] = a+", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const CMatrix N = number_operator(s), am = ladder_minus(s, phi), ap = ladder_plus(s, phi);
      return std::max(max_abs_diff(N * am - am * N, -am), max_abs_diff(N * ap - ap * N, ap));
    });
  });
  rec.run("structure_from_G round trip", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double) {
      const auto back = structure_from_G({s.G().begin(), s.G().end()});
      double err = 0.0;
      for (std::size_t n = 0; n < s.F().size(); ++n) err = std::max(err, std::abs(back.F(n) - s.F(n)));
      return err;
    });
  });
  rec.run("kappa-neg F = N(2s+1-N)/(2s), 2s <= 40", 1e-14, [] {
    double err = 0.0;
    for (int ts = 1; ts <= 40; ++ts) {
      const auto s = build_structure(Family::KappaNeg, ts);
      for (int n = 0; n <= ts; ++n) {
        err = std::max(err, std::abs(s.F(n) - static_cast<double>(n) * (ts + 1 - n) / ts));
      }
    }
    return err;
  });
}

inline void check_phase_states(std::uint64_t seed, std::vector<CheckResult>& out) {
  detail::CheckRecorder rec("phase", out);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> phi_dist(0.0, 4.0 * std::numbers::pi);

  const auto over_specs = [&](const std::function<double(const StructureSpec&, double)>& f) {
    double err = 0.0;
    for (int ts = 1; ts <= 10; ++ts) {
      for (const auto& spec : sample_structures(ts, rng)) err = std::max(err, f(spec, phi_dist(rng)));
    }
    return err;
  };

  rec.run("equiprobability", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const double want = 1.0 / std::sqrt(static_cast<double>(s.dim()));
      double err = 0.0;
      for (long m = 0; m < static_cast<long>(s.dim()); ++m) {
        err = std::max(err, (phase_state(s, m, phi).amp.cwiseAbs().array() - want).abs().maxCoeff());
      }
      return err;
    });
  });
  rec.run("orthonormality", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      double err = 0.0;
      const auto d = static_cast<long>(s.dim());
      for (long m = 0; m < d; ++m) {
        for (long m2 = 0; m2 < d; ++m2) {
          const Complex g = overlap_direct(phase_state(s, m, phi), phase_state(s, m2, phi));
          err = std::max(err, std::abs(g - (m == m2 ? 1.0 : 0.0)));
        }
      }
      return err;
    });
  });
  rec.run("closure", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      const CMatrix C = closure_matrix(s, phi);
      return max_abs_diff(C, CMatrix::Identity(C.rows(), C.cols()));
    });
  });
  rec.run("E eigenvalue", 1e-12, [&] {
    return over_specs([](const StructureSpec& s, double phi) {
      double err = 0.0;
      const auto d = static_cast<long>(s.dim());
      for (long m = 0; m < d; ++m) {
        const auto v = phase_state(s, m, phi);
        const CVector want = root_of_unity(m, d) * v.amp;
        err = std::max(err, max_abs_diff(apply_phase_operator(s, phi, v).amp, want));
      }
      return err;
    });
  });
  rec.run("temporal stability", 1e-12, [&] {
    std::uniform_real_distribution<double> t_dist(-10.0, 10.0);
    return over_specs([&](const StructureSpec& s, double phi) {
      const double t = t_dist(rng);
      const long m = static_cast<long>(rng() % s.dim());
      const PhaseLabel moved = evolve(s, PhaseLabel(m, phi, s.dim()), t);
      return max_abs_diff(evolve_vector(s, phase_state(s, m, phi), t).amp, phase_state(s, moved).amp);
    });
  });
  rec.run("overlap closed = direct", 1e-12, [&] {
    return over_specs([&](const StructureSpec& s, double) {
      double err = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        const long m = static_cast<long>(rng() % s.dim()), m2 = static_cast<long>(rng() % s.dim());
        const double p = phi_dist(rng), p2 = phi_dist(rng);
        err = std::max(err, std::abs(overlap_closed(s, m, p, m2, p2) -
                                     overlap_direct(phase_state(s, m, p), phase_state(s, m2, p2))));
      }
      return err;
    });
  });
}

inline void check_splitter(std::uint64_t seed, std::vector<CheckResult>& out) {
  detail::CheckRecorder rec("splitter", out);
  std::mt19937_64 rng(seed + 2);
  std::uniform_real_distribution<double> phi_dist(0.0, 4.0 * std::numbers::pi), unit(0.0, 1.0);

  rec.run("norm preservation", 1e-12, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 12; ++ts) {
      const BsParams bs(unit(rng));
      for (int n = 0; n <= ts; ++n) err = std::max(err, std::abs(bs_on_basis(n, bs, ts).norm() - 1.0));
      const auto spec = build_structure(Family::KappaNeg, ts);
      err = std::max(err, std::abs(bs_on_phase_state(spec, 0, phi_dist(rng), bs).norm() - 1.0));
    }
    return err;
  });
  rec.run("rho_1 closed = partial trace", 1e-12, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 8; ++ts) {
      for (const auto& s : sample_structures(ts, rng)) {
        for (int trial = 0; trial < 20; ++trial) {
          const long m = static_cast<long>(rng() % s.dim());
          const double phi = phi_dist(rng);
          const BsParams bs(unit(rng));
          const auto oracle = reduced_density_oracle(bs_on_phase_state(s, m, phi, bs));
          err = std::max(err, max_abs_diff(reduced_density_closed(s, m, phi, bs).matrix(), oracle.matrix()));
        }
      }
    }
    return err;
  });
  rec.run("|amp_{t,r}(p,k)| = |amp_{r,t}(k,p)|", 1e-13, [&] {
    double err = 0.0;
    for (int n = 0; n <= 20; ++n) {
      const double r2 = unit(rng);
      const auto a = bs_on_basis(n, BsParams(r2)), b = bs_on_basis(n, BsParams(1.0 - r2));
      for (int p = 0; p <= n; ++p) err = std::max(err, std::abs(std::abs(a.at(p, n - p)) - std::abs(b.at(n - p, p))));
    }
    return err;
  });
}

inline void check_entropy(std::uint64_t seed, std::vector<CheckResult>& out) {
  detail::CheckRecorder rec("entropy", out);
  std::mt19937_64 rng(seed + 3);
  std::uniform_real_distribution<double> phi_dist(0.0, 4.0 * std::numbers::pi), unit(0.0, 1.0);

  rec.run("closed form = oracle", 1e-10, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 8; ++ts) {
      for (const auto& s : sample_structures(ts, rng)) {
        for (int trial = 0; trial < 10; ++trial) {
          const double phi = phi_dist(rng);
          const BsParams bs(unit(rng));
          const double closed = linear_entropy_closed(s, phi, bs).S;
          for (long m = 0; m < static_cast<long>(s.dim()); ++m) {
            err = std::max(err, std::abs(closed - linear_entropy_oracle(s, m, phi, bs).S));
          }
        }
      }
    }
    return err;
  });
  rec.run("folded = unfolded", 1e-12, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 8; ++ts) {
      const auto s = build_structure(Family::KappaNeg, ts);
      const double phi = phi_dist(rng);
      const BsParams bs(unit(rng));
      err = std::max(err, std::abs(linear_entropy_closed(s, phi, bs, Summation::Folded).S -
                                   linear_entropy_closed(s, phi, bs, Summation::Unfolded).S));
    }
    return err;
  });
  rec.run("m independence", 1e-12, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 6; ++ts) {
      const auto s = build_structure(Family::KappaNeg, ts);
      for (int trial = 0; trial < 10; ++trial) {
        const auto report = entropy_m_independence_check(s, phi_dist(rng), BsParams(unit(rng)));
        err = std::max(err, report.spread);
      }
    }
    return err;
  });
  rec.run("S(r2) = S(1 - r2)", 1e-10, [&] {
    double err = 0.0;
    for (int ts = 1; ts <= 8; ++ts) {
      for (const auto& s : sample_structures(ts, rng)) {
        const double phi = phi_dist(rng), r2 = unit(rng);
        err = std::max(err, std::abs(linear_entropy_oracle(s, 0, phi, BsParams(r2)).S -
                                     linear_entropy_oracle(s, 0, phi, BsParams(1.0 - r2)).S));
      }
    }
    return err;
  });
  rec.run("d = 2: S = r2 (1 - r2) / 2", 1e-12, [&] {
    double err = 0.0;
    const auto s = build_structure(Family::KappaNeg, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const double phi = phi_dist(rng), r2 = unit(rng);
      const long m = static_cast<long>(rng() % 2);
      err = std::max(err, std::abs(linear_entropy_oracle(s, m, phi, BsParams(r2)).S - r2 * (1.0 - r2) / 2.0));
    }
    return err;
  });
}

inline const std::vector<std::string_view>& check_suite_names() {
  static const std::vector<std::string_view> names{"algebra", "phase", "splitter", "entropy"};
  return names;
}

/// suite is one of check_suite_names() or "all".
inline std::vector<CheckResult> run_checks(std::string_view suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "algebra") check_algebra(seed, out);
  if (all || suite == "phase") check_phase_states(seed, out);
  if (all || suite == "splitter") check_splitter(seed, out);
  if (all || suite == "entropy") check_entropy(seed, out);
  if (out.empty()) throw Error(Errc::Usage, "unknown check suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace phasebeam
