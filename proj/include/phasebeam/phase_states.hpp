#pragma once

// Temporally stable phase states |m, phi> = (2s+1)^{-1/2} sum_n e^{-i F(n) phi} q^{mn} |n>,
// q = e^{2 pi i / (2s+1)}: eigenstates of E with eigenvalue q^m, equiprobable over |n>, and
// mapped into each other by the free evolution e^{-i H t}: |m, phi> -> |m, phi + t>.

#include <cmath>
#include <cstddef>
#include <utility>

#include "phasebeam/algebra.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/numeric.hpp"

namespace phasebeam {

class PhaseLabel {
 public:
  PhaseLabel(long m, double phi, std::size_t dim) : dim_(static_cast<long>(dim)), phi_(phi) {
    if (dim_ < 1) throw Error(Errc::InvalidDimension, "label dimension must be positive");
    m_ = ((m % dim_) + dim_) % dim_;
  }

  long m() const noexcept { return m_; }
  double phi() const noexcept { return phi_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(dim_); }

  /// theta_m = 2 pi m / (2s+1).
  double theta() const noexcept { return two_pi * static_cast<double>(m_) / static_cast<double>(dim_); }

  friend bool operator==(const PhaseLabel&, const PhaseLabel&) = default;

 private:
  long dim_;
  long m_ = 0;
  double phi_;
};

struct FockVector {
  CVector amp;

  FockVector() = default;
  explicit FockVector(CVector a) : amp(std::move(a)) {}

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amp.size()); }
  double norm() const { return amp.norm(); }
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw Error(Errc::DimensionMismatch, std::string(where) + ": dimensions " + std::to_string(a) +
                                             " and " + std::to_string(b));
  }
}

inline FockVector phase_state(const StructureSpec& spec, long m, double phi) {
  const auto d = static_cast<long>(spec.dim());
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  CVector amp(d);
  for (long n = 0; n < d; ++n) {
    amp(n) = scale * cis(-spec.F(static_cast<std::size_t>(n)) * phi) * root_of_unity(m * n, d);
  }
  return FockVector(std::move(amp));
}

inline FockVector phase_state(const StructureSpec& spec, const PhaseLabel& label) {
  require_same_dim(spec.dim(), label.dim(), "phase_state");
  return phase_state(spec, label.m(), label.phi());
}

inline FockVector apply_phase_operator(const StructureSpec& spec, double phi, const FockVector& state) {
  require_same_dim(spec.dim(), state.dim(), "apply_phase_operator");
  return FockVector(phase_operator(spec, phi) * state.amp);
}

/// Free evolution on labels: (m, phi) -> (m, phi + t).
inline PhaseLabel evolve(const StructureSpec& spec, const PhaseLabel& label, double t) {
  require_same_dim(spec.dim(), label.dim(), "evolve");
  return PhaseLabel(label.m(), label.phi() + t, label.dim());
}

/// e^{-i H t} applied to an arbitrary vector.
inline FockVector evolve_vector(const StructureSpec& spec, const FockVector& state, double t) {
  require_same_dim(spec.dim(), state.dim(), "evolve_vector");
  CVector out = state.amp;
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    out(n) *= cis(-spec.F(static_cast<std::size_t>(n)) * t);
  }
  return FockVector(std::move(out));
}

/// <a|b>, antilinear in the first argument.
inline Complex overlap_direct(const FockVector& a, const FockVector& b) {
  require_same_dim(a.dim(), b.dim(), "overlap_direct");
  KahanComplexSum sum;
  for (Eigen::Index n = 0; n < a.amp.size(); ++n) sum.add(std::conj(a.amp(n)) * b.amp(n));
  return sum.value();
}

/// <m, phi | m2, phi2> = (2s+1)^{-1} sum_n q^{rho(m - m2, phi - phi2, n)} with
/// rho = -(m - m2) n + (2s+1)/(2 pi) (phi - phi2) F(n), and q^x read as e^{2 pi i x / (2s+1)}.
inline Complex overlap_closed(const StructureSpec& spec, long m, double phi, long m2, double phi2) {
  const auto d = static_cast<long>(spec.dim());
  const long dm = m - m2;
  const double dphi = phi - phi2;
  KahanComplexSum sum;
  for (long n = 0; n < d; ++n) {
    // The integer part of rho is reduced mod d before it becomes an angle.
    sum.add(root_of_unity(-dm * n, d) * cis(dphi * spec.F(static_cast<std::size_t>(n))));
  }
  return sum.value() / static_cast<double>(d);
}

/// sum_m |m, phi><m, phi|; equals the identity.
inline CMatrix closure_matrix(const StructureSpec& spec, double phi) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix sum = CMatrix::Zero(d, d);
  for (long m = 0; m < d; ++m) {
    const CVector v = phase_state(spec, m, phi).amp;
    sum += v * v.adjoint();
  }
  return sum;
}

}  // namespace phasebeam
