#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "banklaine/coefficient.hpp"
#include "banklaine/core.hpp"
#include "banklaine/ode.hpp"

namespace banklaine::bl {

/// E(z) = sign * sin(eta z - w1) sin(eta z - w2) / (eta sin(w1 - w2)), with A = eta^2.
struct TrigFamily {
  double eta;
  double omega1;
  double omega2;
  int sign;
};

struct Jet3 {
  Complex z;
  Complex e0;  // E
  Complex e1;  // E'
  Complex e2;  // E''
};

class BankLaineFunction {
 public:
  using Source = std::variant<TrigFamily, ode::SolutionPair>;

  /// Throws kInvalidInput unless eta*sin(w1 - w2) != 0, sign is +-1 and all values finite.
  [[nodiscard]] static BankLaineFunction trig(double eta, double omega1, double omega2, int sign);
  [[nodiscard]] static BankLaineFunction from_pair(ode::SolutionPair pair);

  [[nodiscard]] const Source& source() const { return source_; }
  [[nodiscard]] bool is_trig() const { return std::holds_alternative<TrigFamily>(source_); }
  [[nodiscard]] const TrigFamily& trig_params() const { return std::get<TrigFamily>(source_); }
  [[nodiscard]] const ode::SolutionPair& pair() const { return std::get<ode::SolutionPair>(source_); }

  /// A(z) of the underlying equation.
  [[nodiscard]] Complex coefficient_at(Complex z) const;
  [[nodiscard]] CoefficientFunction coefficient() const;

 private:
  explicit BankLaineFunction(Source source) : source_(std::move(source)) {}
  Source source_;
};

[[nodiscard]] Jet3 jet_at(const BankLaineFunction& e, Complex z);
[[nodiscard]] Jet3 jet_from_pair(const ode::PairJet& p, Complex a_value);
[[nodiscard]] Complex trig_third_derivative(const TrigFamily& t, Complex z);

/// Repeated evaluation of one function at nearby points. Pairs are continued
/// from the nearest computed jet instead of from the base point. Not thread-safe.
class JetStream {
 public:
  explicit JetStream(const BankLaineFunction& e);

  [[nodiscard]] Jet3 at(Complex z);
  [[nodiscard]] ode::PairJet pair_at(Complex z);

 private:
  const BankLaineFunction* e_;
  std::optional<ode::PairContinuation> cont_;
};

/// 4A - [(E'/E)^2 - 2E''/E - 1/E^2].
[[nodiscard]] Complex bl_residual(const Jet3& jet, Complex a_value);

/// Returns s in {+1,-1} with |E'(zero) - s| <= 100*tolerance.
[[nodiscard]] int verify_zero_property(const BankLaineFunction& e, Complex zero, double tolerance);
[[nodiscard]] int verify_zero_property(const Jet3& jet, double tolerance);

struct QuotientDerivatives {
  Complex d1;  // U'
  Complex d2;  // U''
  Complex d3;  // U'''
};

/// U'''/U' - 1.5 (U''/U')^2.
[[nodiscard]] Complex schwarzian(const QuotientDerivatives& u);

/// Derivatives of U = f2/f1. Trig sources use exact recursion from U'/U = 1/E
/// (U scaled to 1 at z); pairs use two-level Richardson central differences of
/// U' = 1/f1^2 with step h.
[[nodiscard]] QuotientDerivatives quotient_derivatives(const BankLaineFunction& e, Complex z,
                                                       double h = 1e-4);

/// 1/E, which equals U'/U.
[[nodiscard]] Complex quotient_logderiv(const Jet3& jet);

/// The n+2 angles in [0, 2pi) with a_n e^{i(n+2)theta} > 0, ascending.
[[nodiscard]] std::vector<double> critical_rays(const CoefficientFunction& coefficient);

}  // namespace banklaine::bl
