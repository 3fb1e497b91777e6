#pragma once

// Linear entropy S = 1 - Tr(rho_1^2) of the splitter output, by two independent routes:
//
//   Oracle      rho_1 from the explicit partial trace, then 1 - sum_ab |rho_ab|^2.
//   ClosedForm  the quadruple sum over (n, n', l, l') with
//               s = (2s+1)^{-2} e^{-i phi(n,n',l,l')}
//                   sqrt((n+l)! (n'+l')! (n+l')! (n'+l)!) t^{2(n+n')} / (n! n'!) r^{2(l+l')} / (l! l'!)
//               phi(n,n',l,l') = [F(n+l) + F(n'+l') - F(n'+l) - F(n+l')] phi.
//
// The closed form carries no dependence on m.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "phasebeam/algebra.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/numeric.hpp"
#include "phasebeam/splitter.hpp"

namespace phasebeam {

enum class EntropyMethod { Oracle, ClosedForm };

struct EntropyValue {
  double S = 0.0;
  EntropyMethod method = EntropyMethod::Oracle;
};

/// Summation layout of the closed form. Folded uses the (l <-> l') antisymmetry and the
/// (n <-> n') symmetry of the phase term to sum cosines over a half domain; Unfolded keeps the
/// complex exponential over the full domain and checks that the imaginary part vanishes.
enum class Summation { Folded, Unfolded };

inline constexpr double entropy_clamp_tolerance = 1e-10;

namespace detail {

/// Clamps S into [0, 1 - 1/d] when it is within entropy_clamp_tolerance of a bound; larger
/// excursions are reported rather than hidden.
inline double checked_entropy(double S, std::size_t dim) {
  const double upper = 1.0 - 1.0 / static_cast<double>(dim);
  if (S < -entropy_clamp_tolerance || S > upper + entropy_clamp_tolerance || !std::isfinite(S)) {
    throw Error(Errc::NumericalConsistency,
                "linear entropy " + std::to_string(S) + " outside [0, " + std::to_string(upper) + "]");
  }
  return std::clamp(S, 0.0, upper);
}

}  // namespace detail

inline EntropyValue linear_entropy_from_rho(const DensityMatrix& rho) {
  KahanSum purity;
  const CMatrix& m = rho.matrix();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) purity.add(std::norm(m(a, b)));
  }
  return {detail::checked_entropy(1.0 - purity.value(), rho.dim()), EntropyMethod::Oracle};
}

/// Raw-matrix overload; rejects non-density input with InvalidDensity.
inline EntropyValue linear_entropy_from_rho(const CMatrix& rho) {
  return linear_entropy_from_rho(DensityMatrix(rho));
}

inline EntropyValue linear_entropy_oracle(const StructureSpec& spec, long m, double phi, const BsParams& bs) {
  return linear_entropy_from_rho(reduced_density_oracle(bs_on_phase_state(spec, m, phi, bs)));
}

inline double phase_term(const StructureSpec& spec, int n, int n2, int l, int l2, double phi) {
  const int top = spec.two_s() + 1;
  if (std::min({n, n2, l, l2}) < 0 || std::max({n + l, n2 + l2, n2 + l, n + l2}) > top) {
    throw Error(Errc::IndexOutOfRange, "phase_term index outside F table");
  }
  const auto F = [&](int i) { return spec.F(static_cast<std::size_t>(i)); };
  return (F(n + l) + F(n2 + l2) - F(n2 + l) - F(n + l2)) * phi;
}

namespace detail {

/// |s(n, n', l, l')| without the (2s+1)^{-2} prefactor, from a log-factorial table.
inline double closed_form_weight(const std::vector<double>& lf, int n, int n2, int l, int l2, double log_t2,
                                 double log_r2) {
  double lw = 0.5 * (lf[n + l] + lf[n2 + l2] + lf[n + l2] + lf[n2 + l]) - lf[n] - lf[n2] - lf[l] - lf[l2];
  if (n + n2 > 0) lw += (n + n2) * log_t2;
  if (l + l2 > 0) lw += (l + l2) * log_r2;
  return std::exp(lw);
}

}  // namespace detail

inline EntropyValue linear_entropy_closed(const StructureSpec& spec, double phi, const BsParams& bs,
                                          Summation layout = Summation::Folded) {
  const int top = spec.two_s();
  const double d = static_cast<double>(spec.dim());
  std::vector<double> lf(static_cast<std::size_t>(top) + 1);
  for (int i = 0; i <= top; ++i) lf[i] = log_factorial(i);
  const double log_t2 = std::log(bs.t2());
  const double log_r2 = std::log(bs.r2());

  double purity = 0.0;
  if (layout == Summation::Folded) {
    KahanSum sum;
    for (int n = 0; n <= top; ++n) {
      for (int n2 = n; n2 <= top; ++n2) {
        const double wn = n == n2 ? 1.0 : 2.0;
        const int lmax = top - std::max(n, n2);
        for (int l = 0; l <= lmax; ++l) {
          for (int l2 = l; l2 <= lmax; ++l2) {
            const double w = detail::closed_form_weight(lf, n, n2, l, l2, log_t2, log_r2);
            if (w == 0.0) continue;
            const double wl = l == l2 ? 1.0 : 2.0;
            sum.add(wn * wl * w * std::cos(phase_term(spec, n, n2, l, l2, phi)));
          }
        }
      }
    }
    purity = sum.value() / (d * d);
  } else {
    KahanComplexSum sum;
    for (int n = 0; n <= top; ++n) {
      for (int n2 = 0; n2 <= top; ++n2) {
        const int lmax = top - std::max(n, n2);
        for (int l = 0; l <= lmax; ++l) {
          for (int l2 = 0; l2 <= lmax; ++l2) {
            const double w = detail::closed_form_weight(lf, n, n2, l, l2, log_t2, log_r2);
            if (w == 0.0) continue;
            sum.add(w * cis(-phase_term(spec, n, n2, l, l2, phi)));
          }
        }
      }
    }
    const Complex total = sum.value() / (d * d);
    if (std::abs(total.imag()) > 1e-12) {
      throw Error(Errc::NumericalConsistency,
                  "imaginary residue " + std::to_string(total.imag()) + " in closed-form purity");
    }
    purity = total.real();
  }
  return {detail::checked_entropy(1.0 - purity, spec.dim()), EntropyMethod::ClosedForm};
}

struct MIndependenceReport {
  double value = 0.0;   ///< S at m = 0
  double spread = 0.0;  ///< max - min over m = 0..2s
  std::vector<double> per_m;
};

inline constexpr double m_independence_tolerance = 1e-12;

/// Oracle entropy for every m; throws NumericalConsistency if the spread exceeds 1e-12.
inline MIndependenceReport entropy_m_independence_check(const StructureSpec& spec, double phi, const BsParams& bs) {
  MIndependenceReport report;
  for (long m = 0; m < static_cast<long>(spec.dim()); ++m) {
    report.per_m.push_back(linear_entropy_oracle(spec, m, phi, bs).S);
  }
  const auto [lo, hi] = std::minmax_element(report.per_m.begin(), report.per_m.end());
  report.value = report.per_m.front();
  report.spread = *hi - *lo;
  if (report.spread > m_independence_tolerance) {
    throw Error(Errc::NumericalConsistency, "entropy varies with m by " + std::to_string(report.spread));
  }
  return report;
}

}  // namespace phasebeam
