#pragma once

// Finite-dimensional generalized Weyl-Heisenberg algebras.
//
// An algebra is fixed by its structure function F tabulated on n = 0..2s+1 together with
// G(n) = F(n+1) - F(n). The truncation F(2s+1) = 0 (equivalently sum G = 0) makes the
// representation (2s+1)-dimensional. All three built-in families and user tables share
// the same StructureSpec, so every downstream routine sees one code path.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasebeam/errors.hpp"
#include "phasebeam/numeric.hpp"

namespace phasebeam {

enum class Family { PeggBarnett, KappaNeg, KappaPos, CustomF };

constexpr std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::PeggBarnett: return "pegg-barnett";
    case Family::KappaNeg: return "kappa-neg";
    case Family::KappaPos: return "kappa-pos";
    case Family::CustomF: return "custom";
  }
  return "unknown";
}

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : {Family::PeggBarnett, Family::KappaNeg, Family::KappaPos, Family::CustomF}) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

/// Absolute tolerance for F(2s+1) = 0, sum G = 0 and the F/G recursion on entered tables.
inline constexpr double table_tolerance = 1e-9;

class StructureSpec {
 public:
  Family family() const noexcept { return family_; }
  int two_s() const noexcept { return two_s_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(two_s_) + 1; }
  std::optional<double> kappa() const noexcept { return kappa_; }

  /// F(0)..F(2s+1).
  std::span<const double> F() const noexcept { return F_; }
  /// G(0)..G(2s).
  std::span<const double> G() const noexcept { return G_; }

  double F(std::size_t n) const { return F_.at(n); }
  double G(std::size_t n) const { return G_.at(n); }

  friend StructureSpec build_structure(Family, int, std::optional<double>);
  friend StructureSpec structure_from_G(std::vector<double>);
  friend StructureSpec structure_from_F(std::vector<double>);

 private:
  StructureSpec(Family family, int two_s, std::optional<double> kappa, std::vector<double> F,
                std::vector<double> G)
      : family_(family), two_s_(two_s), kappa_(kappa), F_(std::move(F)), G_(std::move(G)) {
    validate();
  }

  void validate() const {
    const std::size_t d = dim();
    if (F_.size() != d + 1 || G_.size() != d) {
      throw Error(Errc::InvalidDimension, "F needs 2s+2 entries and G needs 2s+1");
    }
    if (F_[0] != 0.0) throw Error(Errc::NonPositiveF, "F(0) must be 0");
    for (std::size_t n = 1; n < d; ++n) {
      if (!(F_[n] > 0.0)) {
        throw Error(Errc::NonPositiveF, "F(" + std::to_string(n) + ") = " + std::to_string(F_[n]) +
                                            " is not positive");
      }
    }
    if (std::abs(F_[d]) > table_tolerance) {
      throw Error(Errc::TruncationViolated, "F(2s+1) = " + std::to_string(F_[d]) + " is not 0");
    }
    KahanSum trace;
    for (std::size_t n = 0; n < d; ++n) {
      if (std::abs(F_[n + 1] - F_[n] - G_[n]) > table_tolerance) {
        throw Error(Errc::TruncationViolated,
                    "F(n+1) - F(n) != G(n) at n = " + std::to_string(n));
      }
      trace.add(G_[n]);
    }
    if (std::abs(trace.value()) > table_tolerance) {
      throw Error(Errc::TraceNotZero, "sum of G is " + std::to_string(trace.value()));
    }
  }

  Family family_;
  int two_s_;
  std::optional<double> kappa_;
  std::vector<double> F_;
  std::vector<double> G_;
};

namespace detail {

inline std::vector<double> differences_with_truncation(const std::vector<double>& F) {
  // G(2s) = -F(2s) makes F(2s+1) = 0 exact.
  const std::size_t d = F.size() - 1;
  std::vector<double> G(d);
  for (std::size_t n = 0; n + 1 < d; ++n) G[n] = F[n + 1] - F[n];
  G[d - 1] = -F[d - 1];
  return G;
}

}  // namespace detail

/// Builds one of the tabulated families. Case (i) PeggBarnett: F(n) = n. Case (ii) KappaNeg:
/// F(n) = n[1 + kappa(n-1)] with kappa = -1/(2s). Case (iii) KappaPos: same formula, kappa > 0,
/// truncated at 2s+1.
inline StructureSpec build_structure(Family family, int two_s, std::optional<double> kappa = std::nullopt) {
  if (two_s < 1) throw Error(Errc::InvalidDimension, "2s must be at least 1");
  const std::size_t d = static_cast<std::size_t>(two_s) + 1;

  std::optional<double> k;
  switch (family) {
    case Family::PeggBarnett:
      break;
    case Family::KappaNeg: {
      const double fixed = -1.0 / static_cast<double>(two_s);
      if (kappa && std::abs(*kappa - fixed) > 1e-12) {
        throw Error(Errc::InvalidKappa, "kappa-neg requires kappa = -1/(2s)");
      }
      k = fixed;
      break;
    }
    case Family::KappaPos:
      if (!kappa) throw Error(Errc::MissingKappa, "kappa-pos requires kappa");
      if (!(*kappa > 0.0)) throw Error(Errc::InvalidKappa, "kappa-pos requires kappa > 0");
      k = kappa;
      break;
    case Family::CustomF:
      throw Error(Errc::Usage, "custom structures are built from a table with structure_from_F");
  }

  std::vector<double> F(d + 1, 0.0);
  for (std::size_t n = 1; n < d; ++n) {
    const double x = static_cast<double>(n);
    F[n] = k ? x * (1.0 + *k * (x - 1.0)) : x;
  }
  auto G = detail::differences_with_truncation(F);
  return StructureSpec(family, two_s, k, std::move(F), std::move(G));
}

/// F by prefix sums F(n) = G(0) + ... + G(n-1).
inline StructureSpec structure_from_G(std::vector<double> G) {
  if (G.size() < 2) throw Error(Errc::InvalidDimension, "G needs at least 2 entries");
  KahanSum trace;
  for (double g : G) trace.add(g);
  if (std::abs(trace.value()) > table_tolerance) {
    throw Error(Errc::TraceNotZero, "sum of G is " + std::to_string(trace.value()));
  }
  std::vector<double> F(G.size() + 1, 0.0);
  for (std::size_t n = 0; n < G.size(); ++n) F[n + 1] = F[n] + G[n];
  const int two_s = static_cast<int>(G.size()) - 1;
  return StructureSpec(Family::CustomF, two_s, std::nullopt, std::move(F), std::move(G));
}

/// User-tabulated F(0)..F(2s+1).
inline StructureSpec structure_from_F(std::vector<double> F) {
  if (F.size() < 3) throw Error(Errc::InvalidDimension, "F needs at least 3 entries");
  std::vector<double> G(F.size() - 1);
  for (std::size_t n = 0; n < G.size(); ++n) G[n] = F[n + 1] - F[n];
  const int two_s = static_cast<int>(F.size()) - 2;
  return StructureSpec(Family::CustomF, two_s, std::nullopt, std::move(F), std::move(G));
}

/// Phase picked up by the n -> n-1 link, [F(n) - F(n-1)] phi.
inline double link_angle(const StructureSpec& spec, std::size_t n, double phi) {
  return (spec.F(n) - spec.F(n - 1)) * phi;
}

inline CMatrix number_operator(const StructureSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix N = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) N(n, n) = static_cast<double>(n);
  return N;
}

/// a- |n> = sqrt(F(n)) e^{i[F(n)-F(n-1)]phi} |n-1>.
inline CMatrix ladder_minus(const StructureSpec& spec, double phi) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix a = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    const auto un = static_cast<std::size_t>(n);
    a(n - 1, n) = std::sqrt(spec.F(un)) * cis(link_angle(spec, un, phi));
  }
  return a;
}

inline CMatrix ladder_plus(const StructureSpec& spec, double phi) {
  return ladder_minus(spec, phi).adjoint();
}

/// H(N) = F(N) = a+ a-.
inline CMatrix hamiltonian(const StructureSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix H = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) H(n, n) = spec.F(static_cast<std::size_t>(n));
  return H;
}

inline CMatrix sqrt_F_operator(const StructureSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix S = CMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) S(n, n) = std::sqrt(spec.F(static_cast<std::size_t>(n)));
  return S;
}

/// Unitary factor E of the polar decomposition a- = E sqrt(F(N)): a cyclic shift with link
/// phases, closing |0> -> |2s> with phase [F(0) - F(2s)] phi.
inline CMatrix phase_operator(const StructureSpec& spec, double phi) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  CMatrix E = CMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) {
    E(n - 1, n) = cis(link_angle(spec, static_cast<std::size_t>(n), phi));
  }
  E(d - 1, 0) = cis((spec.F(0) - spec.F(static_cast<std::size_t>(d - 1))) * phi);
  return E;
}

}  // namespace phasebeam
