#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "banklaine/core.hpp"

namespace banklaine {

/// The entire coefficient A(z) of y'' + A(z) y = 0.
class CoefficientFunction {
 public:
  struct Constant {
    Complex value;
  };
  struct Polynomial {
    std::vector<Complex> coeffs;  // ascending degree
  };
  struct Analytic {
    std::function<Complex(Complex)> evaluator;
    std::string label;
  };

  [[nodiscard]] static CoefficientFunction constant(Complex value);
  /// Throws kInvalidInput when the leading coefficient of a non-constant
  /// polynomial is zero or the sequence is empty.
  [[nodiscard]] static CoefficientFunction polynomial(std::vector<Complex> coeffs);
  [[nodiscard]] static CoefficientFunction analytic(std::function<Complex(Complex)> evaluator,
                                                    std::string label = "analytic");

  [[nodiscard]] Complex operator()(Complex z) const;

  /// Taylor coefficients of s -> A(center + s), written into out[0..size).
  /// Exact for constants and polynomials; analytic evaluators use a
  /// trapezoidal Cauchy integral on the circle |s| = radius.
  void taylor(Complex center, double radius, std::span<Complex> out) const;

  [[nodiscard]] bool is_polynomial() const;  // constants count as degree 0
  [[nodiscard]] int degree() const;          // -1 for Analytic
  [[nodiscard]] std::vector<Complex> polynomial_coeffs() const;
  /// True when every Taylor coefficient at real centres is real.
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] std::string describe() const;

  [[nodiscard]] const auto& kind() const { return kind_; }

 private:
  explicit CoefficientFunction(std::variant<Constant, Polynomial, Analytic> kind)
      : kind_(std::move(kind)) {}

  std::variant<Constant, Polynomial, Analytic> kind_;
};

}  // namespace banklaine
