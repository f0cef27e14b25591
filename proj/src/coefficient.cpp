#include "banklaine/coefficient.hpp"

#include <algorithm>
#include <sstream>

namespace banklaine {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kIntegrationDomain: return "integration-domain";
    case ErrorCode::kStiffness: return "stiffness";
    case ErrorCode::kEvaluationAtZero: return "evaluation-at-zero";
    case ErrorCode::kNotBankLaineZero: return "not-a-bank-laine-zero";
    case ErrorCode::kCriticalPoint: return "critical-point";
    case ErrorCode::kRealityViolation: return "reality-violation";
    case ErrorCode::kBoundaryTooClose: return "boundary-too-close";
    case ErrorCode::kInsufficientData: return "insufficient-data";
    case ErrorCode::kInsufficientScan: return "insufficient-scan";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kConstruction: return "construction";
    case ErrorCode::kUnreliableSample: return "unreliable-sample";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

CoefficientFunction CoefficientFunction::constant(Complex value) {
  if (!is_finite(value)) throw Error(ErrorCode::kInvalidInput, "constant coefficient is not finite");
  return CoefficientFunction(Constant{value});
}

CoefficientFunction CoefficientFunction::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "polynomial coefficient list is empty");
  }
  if (coeffs.size() > 1 && coeffs.back() == Complex{}) {
    throw Error(ErrorCode::kInvalidInput, "polynomial leading coefficient is zero");
  }
  for (const auto& c : coeffs) {
    if (!is_finite(c)) {
      throw Error(ErrorCode::kInvalidInput, "polynomial coefficient is not finite");
    }
  }
  return CoefficientFunction(Polynomial{std::move(coeffs)});
}

CoefficientFunction CoefficientFunction::analytic(std::function<Complex(Complex)> evaluator,
                                                  std::string label) {
  if (!evaluator) {
    throw Error(ErrorCode::kInvalidInput, "analytic coefficient needs an evaluator");
  }
  return CoefficientFunction(Analytic{std::move(evaluator), std::move(label)});
}

Complex CoefficientFunction::operator()(Complex z) const {
  return std::visit(
      [z](const auto& k) -> Complex {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return k.value;
        } else if constexpr (std::is_same_v<K, Polynomial>) {
          Complex acc{};
          for (auto it = k.coeffs.rbegin(); it != k.coeffs.rend(); ++it) acc = acc * z + *it;
          return acc;
        } else {
          return k.evaluator(z);
        }
      },
      kind_);
}

void CoefficientFunction::taylor(Complex center, double radius, std::span<Complex> out) const {
  std::fill(out.begin(), out.end(), Complex{});
  if (out.empty()) return;
  if (const auto* c = std::get_if<Constant>(&kind_)) {
    out[0] = c->value;
    return;
  }
  if (const auto* p = std::get_if<Polynomial>(&kind_)) {
    // Repeated synthetic division re-expands the polynomial about `center`.
    std::vector<Complex> work = p->coeffs;
    const std::size_t n = work.size();
    for (std::size_t k = 0; k < n && k < out.size(); ++k) {
      for (std::size_t j = n - 1; j > k; --j) work[j - 1] += center * work[j];
      out[k] = work[k];
    }
    return;
  }
  const auto& a = std::get<Analytic>(kind_);
  constexpr int kNodes = 64;
  std::vector<Complex> samples(kNodes);
  for (int j = 0; j < kNodes; ++j) {
    samples[j] = a.evaluator(center + radius * polar_unit(2.0 * kPi * j / kNodes));
  }
  const std::size_t usable = std::min<std::size_t>(out.size(), kNodes / 2);
  double scale = 1.0;
  for (std::size_t k = 0; k < usable; ++k) {
    Complex acc{};
    for (int j = 0; j < kNodes; ++j) {
      acc += samples[j] * polar_unit(-2.0 * kPi * static_cast<double>(j * k) / kNodes);
    }
    out[k] = acc / (static_cast<double>(kNodes) * scale);
    scale *= radius;
  }
}

bool CoefficientFunction::is_polynomial() const {
  return !std::holds_alternative<Analytic>(kind_);
}

int CoefficientFunction::degree() const {
  if (std::holds_alternative<Constant>(kind_)) return 0;
  if (const auto* p = std::get_if<Polynomial>(&kind_)) return static_cast<int>(p->coeffs.size()) - 1;
  return -1;
}

std::vector<Complex> CoefficientFunction::polynomial_coeffs() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return {c->value};
  if (const auto* p = std::get_if<Polynomial>(&kind_)) return p->coeffs;
  throw Error(ErrorCode::kInvalidInput, "coefficient is not a polynomial");
}

bool CoefficientFunction::is_real() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value.imag() == 0.0;
  if (const auto* p = std::get_if<Polynomial>(&kind_)) {
    return std::all_of(p->coeffs.begin(), p->coeffs.end(),
                       [](Complex c) { return c.imag() == 0.0; });
  }
  return false;
}

std::string CoefficientFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* c = std::get_if<Constant>(&kind_)) {
    os << "const(" << c->value.real() << "," << c->value.imag() << ")";
  } else if (const auto* p = std::get_if<Polynomial>(&kind_)) {
    os << "poly(";
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
      if (i) os << ";";
      os << p->coeffs[i].real() << "," << p->coeffs[i].imag();
    }
    os << ")";
  } else {
    os << std::get<Analytic>(kind_).label;
  }
  return os.str();
}

}  // namespace banklaine
