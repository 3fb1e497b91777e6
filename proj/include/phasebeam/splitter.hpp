#pragma once

// Lossless symmetric beam splitter with the vacuum on the second input port.
//
//   B(theta)|n, 0> = sum_p sqrt(n! / (p! (n-p)!)) t^p (i r)^{n-p} |p, n-p>,
//   t = cos(theta/2), r = sin(theta/2).
//
// Total photon number is conserved, so outputs live on the triangle p + k <= 2s.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phasebeam/algebra.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/numeric.hpp"
#include "phasebeam/phase_states.hpp"

namespace phasebeam {

/// Splitter keyed on the reflection probability R = r^2.
class BsParams {
 public:
  explicit BsParams(double r2) : r2_(r2) {
    if (!(r2 >= 0.0 && r2 <= 1.0)) {
      throw Error(Errc::Range, "reflection probability r2 = " + std::to_string(r2) + " outside [0, 1]");
    }
    t2_ = 1.0 - r2_;
  }

  static BsParams balanced() { return BsParams(0.5); }

  double r2() const noexcept { return r2_; }
  double t2() const noexcept { return t2_; }
  double r() const { return std::sqrt(r2_); }
  double t() const { return std::sqrt(t2_); }

 private:
  double r2_;
  double t2_;
};

/// Two-mode amplitudes amp(p, k) on the triangle p + k <= 2s, stored p-major.
class BipartiteVector {
 public:
  explicit BipartiteVector(int two_s) : two_s_(two_s) {
    if (two_s < 0) throw Error(Errc::InvalidDimension, "2s must be non-negative");
    const auto d = static_cast<std::size_t>(two_s) + 1;
    amp_.assign(d * (d + 1) / 2, Complex{});
  }

  int two_s() const noexcept { return two_s_; }
  std::size_t mode_dim() const noexcept { return static_cast<std::size_t>(two_s_) + 1; }
  std::size_t size() const noexcept { return amp_.size(); }

  Complex& at(int p, int k) { return amp_[index(p, k)]; }
  const Complex& at(int p, int k) const { return amp_[index(p, k)]; }

  std::span<Complex> data() noexcept { return amp_; }
  std::span<const Complex> data() const noexcept { return amp_; }

  double norm() const {
    KahanSum s;
    for (const auto& a : amp_) s.add(std::norm(a));
    return std::sqrt(s.value());
  }

 private:
  std::size_t index(int p, int k) const {
    if (p < 0 || k < 0 || p + k > two_s_) {
      throw Error(Errc::IndexOutOfRange, "(p, k) = (" + std::to_string(p) + ", " + std::to_string(k) +
                                             ") outside p + k <= " + std::to_string(two_s_));
    }
    const auto up = static_cast<std::size_t>(p);
    const auto d = mode_dim();
    return up * (2 * d + 1 - up) / 2 + static_cast<std::size_t>(k);
  }

  int two_s_;
  std::vector<Complex> amp_;
};

/// Hermitian, unit-trace, positive semidefinite matrix; checked on construction.
class DensityMatrix {
 public:
  static constexpr double hermitian_tolerance = 1e-12;
  static constexpr double trace_tolerance = 1e-12;
  static constexpr double psd_tolerance = 1e-10;

  explicit DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
      throw Error(Errc::InvalidDensity, "density matrix must be square and non-empty");
    }
    const double herm = max_abs_diff(rho_, rho_.adjoint());
    if (herm > hermitian_tolerance) {
      throw Error(Errc::InvalidDensity, "not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - 1.0) > trace_tolerance) {
      throw Error(Errc::InvalidDensity, "trace " + std::to_string(tr.real()) + " is not 1");
    }
    const CMatrix hermitian_part = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -psd_tolerance) {
      throw Error(Errc::InvalidDensity, "negative eigenvalue " + std::to_string(min_eig));
    }
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const noexcept { return rho_; }
  Complex operator()(Eigen::Index a, Eigen::Index b) const { return rho_(a, b); }

 private:
  CMatrix rho_;
};

/// sqrt(binom(n, p)) t^p (i r)^{n-p}, with i^{n-p} applied as a quarter turn.
inline Complex splitter_amplitude(int n, int p, const BsParams& bs) {
  const double mag = sqrt_binomial(n, p) * std::pow(bs.t(), p) * std::pow(bs.r(), n - p);
  return times_i_pow(Complex{mag, 0.0}, n - p);
}

/// B|n, 0> embedded in the triangle p + k <= two_s (two_s >= n).
inline BipartiteVector bs_on_basis(int n, const BsParams& bs, int two_s) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "photon number must be non-negative");
  if (two_s < n) throw Error(Errc::InvalidDimension, "output triangle smaller than photon number");
  BipartiteVector out(two_s);
  for (int p = 0; p <= n; ++p) out.at(p, n - p) = splitter_amplitude(n, p, bs);
  return out;
}

inline BipartiteVector bs_on_basis(int n, const BsParams& bs) { return bs_on_basis(n, bs, n); }

/// B (|psi> x |0>) for an arbitrary single-mode input.
inline BipartiteVector bs_on_state(const FockVector& input, const BsParams& bs) {
  const int two_s = static_cast<int>(input.dim()) - 1;
  BipartiteVector out(two_s);
  for (int n = 0; n <= two_s; ++n) {
    const Complex c = input.amp(n);
    for (int p = 0; p <= n; ++p) out.at(p, n - p) = c * splitter_amplitude(n, p, bs);
  }
  return out;
}

inline BipartiteVector bs_on_phase_state(const StructureSpec& spec, long m, double phi, const BsParams& bs) {
  return bs_on_state(phase_state(spec, m, phi), bs);
}

/// rho_1 = Tr_2 |b><b|: rho_1[p, p'] = sum_k amp(p, k) conj(amp(p', k)).
inline DensityMatrix reduced_density_oracle(const BipartiteVector& b) {
  constexpr double norm_tolerance = 1e-9;
  const double nrm = b.norm();
  if (std::abs(nrm - 1.0) > norm_tolerance) {
    throw Error(Errc::NotNormalized, "bipartite norm " + std::to_string(nrm));
  }
  const int top = b.two_s();
  const auto d = static_cast<Eigen::Index>(b.mode_dim());
  CMatrix rho = CMatrix::Zero(d, d);
  for (int p = 0; p <= top; ++p) {
    for (int p2 = 0; p2 <= top; ++p2) {
      Complex acc{};
      for (int k = 0; k <= top - std::max(p, p2); ++k) acc += b.at(p, k) * std::conj(b.at(p2, k));
      rho(p, p2) = acc;
    }
  }
  return DensityMatrix(std::move(rho));
}

/// c(n, l) = (2s+1)^{-1/2} sqrt((n+l)! / (n! l!)) q^{m(n+l)} t^n (i r)^l e^{-i F(n+l) phi}.
inline Complex reduced_coefficient(const StructureSpec& spec, long m, double phi, const BsParams& bs, int n,
                                   int l) {
  const auto d = static_cast<long>(spec.dim());
  const double mag = sqrt_binomial(n + l, n) * std::pow(bs.t(), n) * std::pow(bs.r(), l) /
                     std::sqrt(static_cast<double>(d));
  const Complex phase = root_of_unity(m * (n + l), d) * cis(-spec.F(static_cast<std::size_t>(n + l)) * phi);
  return times_i_pow(mag * phase, l);
}

/// rho_1 assembled straight from the coefficients c(n, l), l <= min(2s-n, 2s-n').
inline DensityMatrix reduced_density_closed(const StructureSpec& spec, long m, double phi, const BsParams& bs) {
  const int top = spec.two_s();
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix c = CMatrix::Zero(d, d);
  for (int n = 0; n <= top; ++n) {
    for (int l = 0; l <= top - n; ++l) c(n, l) = reduced_coefficient(spec, m, phi, bs, n, l);
  }
  CMatrix rho = CMatrix::Zero(d, d);
  for (int n = 0; n <= top; ++n) {
    for (int n2 = 0; n2 <= top; ++n2) {
      Complex acc{};
      for (int l = 0; l <= std::min(top - n, top - n2); ++l) acc += c(n, l) * std::conj(c(n2, l));
      rho(n, n2) = acc;
    }
  }
  return DensityMatrix(std::move(rho));
}

}  // namespace phasebeam
