#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace banklaine {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

enum class ErrorCode {
  kInvalidInput,
  kIntegrationDomain,
  kStiffness,
  kEvaluationAtZero,
  kNotBankLaineZero,
  kCriticalPoint,
  kRealityViolation,
  kBoundaryTooClose,
  kInsufficientData,
  kInsufficientScan,
  kDomain,
  kConstruction,
  kUnreliableSample,
  kUsage,
};

[[nodiscard]] const char* to_string(ErrorCode code);

/// Every failure raised by the library carries a code so front ends can map
/// it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[nodiscard]] inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

[[nodiscard]] inline Complex polar_unit(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace banklaine
