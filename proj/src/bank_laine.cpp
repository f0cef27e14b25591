#include "banklaine/bank_laine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace banklaine::bl {

namespace {

[[nodiscard]] Complex trig_scale(const TrigFamily& t) {
  return static_cast<double>(t.sign) / (t.eta * std::sin(t.omega1 - t.omega2));
}

[[nodiscard]] Jet3 trig_jet(const TrigFamily& t, Complex z) {
  const Complex c = trig_scale(t);
  const Complex p = t.eta * z - t.omega1;
  const Complex q = t.eta * z - t.omega2;
  return {z, c * std::sin(p) * std::sin(q), c * t.eta * std::sin(p + q),
          2.0 * c * t.eta * t.eta * std::cos(p + q)};
}

void require_nonzero(const Jet3& jet) {
  if (jet.e0 == Complex{}) {
    std::ostringstream os;
    os.precision(17);
    os << "E vanishes at z=(" << jet.z.real() << ", " << jet.z.imag() << ")";
    throw Error(ErrorCode::kEvaluationAtZero, os.str());
  }
}

}  // namespace

BankLaineFunction BankLaineFunction::trig(double eta, double omega1, double omega2, int sign) {
  if (!std::isfinite(eta) || !std::isfinite(omega1) || !std::isfinite(omega2)) {
    throw Error(ErrorCode::kInvalidInput, "trig family parameters must be finite");
  }
  if (sign != 1 && sign != -1) throw Error(ErrorCode::kInvalidInput, "trig family sign must be +1 or -1");
  const double d = eta * std::sin(omega1 - omega2);
  if (eta == 0.0 || std::abs(d) < 1e-14 * std::max(1.0, std::abs(eta))) {
    throw Error(ErrorCode::kInvalidInput, "eta*sin(w1 - w2) must be nonzero");
  }
  return BankLaineFunction(TrigFamily{eta, omega1, omega2, sign});
}

BankLaineFunction BankLaineFunction::from_pair(ode::SolutionPair pair) {
  return BankLaineFunction(std::move(pair));
}

Complex BankLaineFunction::coefficient_at(Complex z) const {
  if (const auto* t = std::get_if<TrigFamily>(&source_)) return t->eta * t->eta;
  return pair().coefficient(z);
}

CoefficientFunction BankLaineFunction::coefficient() const {
  if (const auto* t = std::get_if<TrigFamily>(&source_)) {
    return CoefficientFunction::constant(t->eta * t->eta);
  }
  return pair().coefficient;
}

Jet3 jet_from_pair(const ode::PairJet& p, Complex a_value) {
  const Complex e0 = p.f1 * p.f2;
  return {p.z, e0, p.df1 * p.f2 + p.f1 * p.df2, 2.0 * p.df1 * p.df2 - 2.0 * a_value * e0};
}

Jet3 jet_at(const BankLaineFunction& e, Complex z) {
  if (e.is_trig()) return trig_jet(e.trig_params(), z);
  const auto& pair = e.pair();
  return jet_from_pair(pair.evaluate(z), pair.coefficient(z));
}

Complex trig_third_derivative(const TrigFamily& t, Complex z) {
  const Complex p = t.eta * z - t.omega1;
  const Complex q = t.eta * z - t.omega2;
  return -4.0 * trig_scale(t) * t.eta * t.eta * t.eta * std::sin(p + q);
}

JetStream::JetStream(const BankLaineFunction& e) : e_(&e) {
  if (!e.is_trig()) cont_.emplace(e.pair());
}

ode::PairJet JetStream::pair_at(Complex z) {
  if (!cont_) throw Error(ErrorCode::kInvalidInput, "trig family has no solution pair");
  return cont_->at(z);
}

Jet3 JetStream::at(Complex z) {
  if (!cont_) return trig_jet(e_->trig_params(), z);
  return jet_from_pair(cont_->at(z), e_->pair().coefficient(z));
}

Complex bl_residual(const Jet3& jet, Complex a_value) {
  require_nonzero(jet);
  const Complex inv = 1.0 / jet.e0;
  const Complex ld = jet.e1 * inv;
  return 4.0 * a_value - (ld * ld - 2.0 * jet.e2 * inv - inv * inv);
}

int verify_zero_property(const Jet3& jet, double tolerance) {
  const int s = jet.e1.real() >= 0.0 ? 1 : -1;
  const double miss = std::abs(jet.e1 - static_cast<double>(s));
  if (miss > 100.0 * tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "|E'| = " << std::abs(jet.e1) << " at z=(" << jet.z.real() << ", " << jet.z.imag()
       << "), distance to " << s << " is " << miss;
    throw Error(ErrorCode::kNotBankLaineZero, os.str());
  }
  return s;
}

int verify_zero_property(const BankLaineFunction& e, Complex zero, double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  const Jet3 jet = jet_at(e, zero);
  if (std::abs(jet.e0) > tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "|E| = " << std::abs(jet.e0) << " exceeds tolerance at the proposed zero";
    throw Error(ErrorCode::kInvalidInput, os.str());
  }
  return verify_zero_property(jet, tolerance);
}

Complex schwarzian(const QuotientDerivatives& u) {
  if (u.d1 == Complex{}) throw Error(ErrorCode::kCriticalPoint, "U' vanishes");
  const Complex r = u.d2 / u.d1;
  return u.d3 / u.d1 - 1.5 * r * r;
}

QuotientDerivatives quotient_derivatives(const BankLaineFunction& e, Complex z, double h) {
  if (e.is_trig()) {
    const auto& t = e.trig_params();
    const Jet3 jet = trig_jet(t, z);
    require_nonzero(jet);
    const Complex l = 1.0 / jet.e0;
    const Complex l1 = -jet.e1 * l * l;
    const Complex l2 = -jet.e2 * l * l + 2.0 * jet.e1 * jet.e1 * l * l * l;
    return {l, l * l + l1, l * l * l + 3.0 * l * l1 + l2};
  }
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidInput, "difference step must be positive");
  const auto& pair = e.pair();
  const ode::PairJet center = pair.evaluate(z);
  if (center.f1 == Complex{}) throw Error(ErrorCode::kCriticalPoint, "f1 vanishes, U has a pole");
  const ode::Jet init[1] = {{center.f1, center.df1}};
  ode::StepperOptions options;
  options.tolerance = pair.tolerance;
  auto uprime = [&](double offset) {
    if (offset == 0.0) return 1.0 / (center.f1 * center.f1);
    const auto out = ode::propagate(pair.coefficient, init,
                                    ode::ComplexPath::segment(z, z + offset), options);
    return 1.0 / (out[0].value * out[0].value);
  };
  const Complex g0 = uprime(0.0);
  auto level = [&](double step) {
    const Complex gp = uprime(step);
    const Complex gm = uprime(-step);
    return std::pair{(gp - gm) / (2.0 * step), (gp - 2.0 * g0 + gm) / (step * step)};
  };
  const auto [d1h, d2h] = level(h);
  const auto [d1q, d2q] = level(0.5 * h);
  return {g0, (4.0 * d1q - d1h) / 3.0, (4.0 * d2q - d2h) / 3.0};
}

Complex quotient_logderiv(const Jet3& jet) {
  require_nonzero(jet);
  return 1.0 / jet.e0;
}

std::vector<double> critical_rays(const CoefficientFunction& coefficient) {
  if (!coefficient.is_polynomial() || coefficient.degree() < 1) {
    throw Error(ErrorCode::kInvalidInput, "critical rays need a polynomial of degree >= 1");
  }
  const auto coeffs = coefficient.polynomial_coeffs();
  const Complex lead = coeffs.back();
  if (lead == Complex{}) throw Error(ErrorCode::kInvalidInput, "leading coefficient is zero");
  const int n = coefficient.degree();
  std::vector<double> rays;
  rays.reserve(static_cast<std::size_t>(n) + 2);
  const double base = -std::arg(lead);
  for (int k = 0; k < n + 2; ++k) {
    double theta = std::fmod((base + 2.0 * kPi * k) / (n + 2), 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    if (theta >= 2.0 * kPi) theta -= 2.0 * kPi;
    rays.push_back(theta);
  }
  std::sort(rays.begin(), rays.end());
  return rays;
}

}  // namespace banklaine::bl
