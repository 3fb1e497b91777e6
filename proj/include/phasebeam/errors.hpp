#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasebeam {

enum class Errc {
  InvalidDimension,
  NonPositiveF,
  MissingKappa,
  InvalidKappa,
  TraceNotZero,
  TruncationViolated,
  DimensionMismatch,
  NotNormalized,
  InvalidDensity,
  IndexOutOfRange,
  NumericalConsistency,
  Range,
  Usage,
  Io,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidDimension: return "InvalidDimension";
    case Errc::NonPositiveF: return "NonPositiveF";
    case Errc::MissingKappa: return "MissingKappa";
    case Errc::InvalidKappa: return "InvalidKappa";
    case Errc::TraceNotZero: return "TraceNotZero";
    case Errc::TruncationViolated: return "TruncationViolated";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::InvalidDensity: return "InvalidDensity";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NumericalConsistency: return "NumericalConsistency";
    case Errc::Range: return "Range";
    case Errc::Usage: return "Usage";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells the failure class apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace phasebeam
