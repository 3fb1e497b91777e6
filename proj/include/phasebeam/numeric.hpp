#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

namespace phasebeam {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline Complex cis(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// z * i^k without touching transcendental functions.
inline Complex times_i_pow(Complex z, long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return z;
    case 1: return {-z.imag(), z.real()};
    case 2: return -z;
    default: return {z.imag(), -z.real()};
  }
}

/// e^{2 pi i k / d}, with k reduced mod d first so large products m*n stay exact.
inline Complex root_of_unity(long k, long d) {
  const long r = ((k % d) + d) % d;
  return cis(two_pi * static_cast<double>(r) / static_cast<double>(d));
}

inline double log_factorial(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// sqrt(n! / (k! (n-k)!)) evaluated in log space.
inline double sqrt_binomial(long n, long k) {
  return std::exp(0.5 * (log_factorial(n) - log_factorial(k) - log_factorial(n - k)));
}

/// k * log(x) with the convention 0 * log(0) = 0, so exp() of it reproduces x^k including 0^0 = 1.
inline double log_pow(double x, long k) { return k == 0 ? 0.0 : static_cast<double>(k) * std::log(x); }

/// Neumaier variant of compensated summation.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_;
  KahanSum im_;
};

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace phasebeam
