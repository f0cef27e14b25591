#pragma once

#include <span>
#include <vector>

#include "banklaine/coefficient.hpp"
#include "banklaine/core.hpp"

namespace banklaine::ode {

inline constexpr double kDefaultTolerance = 1e-12;

/// Polyline integration contour. At least two finite nodes, consecutive nodes distinct.
class ComplexPath {
 public:
  explicit ComplexPath(std::vector<Complex> nodes);

  [[nodiscard]] static ComplexPath segment(Complex from, Complex to);

  [[nodiscard]] const std::vector<Complex>& nodes() const { return nodes_; }
  [[nodiscard]] Complex front() const { return nodes_.front(); }
  [[nodiscard]] Complex back() const { return nodes_.back(); }
  [[nodiscard]] double length() const;

 private:
  std::vector<Complex> nodes_;
};

/// Value and first derivative of one solution. y'' is never stored; it is
/// always -A(z) y.
struct Jet {
  Complex value;
  Complex slope;
};

struct TraceSample {
  Complex z;
  Complex y;
  Complex dy;
};

using Trace = std::vector<TraceSample>;

struct StepperOptions {
  double tolerance = kDefaultTolerance;  // local error per unit arclength, relative to max(1, |jet|)
  int order = 30;
  int max_steps = 2'000'000;
};

/// Propagates several solutions of y'' + A y = 0 together along `path`
/// (they share the Taylor expansion of A). `on_step`, when set, receives the
/// point and the jets after every accepted step.
template <class OnStep>
std::vector<Jet> propagate(const CoefficientFunction& coefficient, std::span<const Jet> initial,
                           const ComplexPath& path, const StepperOptions& options, OnStep&& on_step);

std::vector<Jet> propagate(const CoefficientFunction& coefficient, std::span<const Jet> initial,
                           const ComplexPath& path, const StepperOptions& options = {});

/// Integrates one solution; the trace starts at `start` and ends at the last path node.
[[nodiscard]] Trace integrate_ivp(const CoefficientFunction& coefficient, Complex start, Complex value,
                                  Complex slope, const ComplexPath& path,
                                  double tolerance = kDefaultTolerance);

struct PairJet {
  Complex z;
  Complex f1, df1;
  Complex f2, df2;

  [[nodiscard]] Complex wronskian() const { return f1 * df2 - df1 * f2; }
};

/// Two solutions normalised at `base_point` so that W(f1, f2) = 1.
struct SolutionPair {
  CoefficientFunction coefficient;
  Complex base_point;
  Jet init1{1.0, 0.0};
  Jet init2{0.0, 1.0};
  double tolerance = kDefaultTolerance;

  /// Along the straight segment from base_point.
  [[nodiscard]] PairJet evaluate(Complex z) const;
  /// Along a caller-supplied path starting at base_point.
  [[nodiscard]] PairJet evaluate_along(const ComplexPath& path) const;
};

[[nodiscard]] SolutionPair solution_pair(CoefficientFunction coefficient, Complex base_point,
                                         double tolerance = kDefaultTolerance);

[[nodiscard]] Complex wronskian_at(const SolutionPair& pair, Complex z, const ComplexPath& path);

/// Evaluates a pair at many nearby points by continuing from the closest
/// previously computed jet. Intended for scans and contour quadrature where
/// queries arrive in spatial order. Not thread-safe.
class PairContinuation {
 public:
  explicit PairContinuation(SolutionPair pair, double anchor_spacing = 1.0);

  [[nodiscard]] PairJet at(Complex z);
  [[nodiscard]] const SolutionPair& pair() const { return pair_; }

 private:
  SolutionPair pair_;
  double anchor_spacing_;
  std::vector<PairJet> anchors_;
  PairJet last_;
};

}  // namespace banklaine::ode

#include "banklaine/detail/ode_impl.hpp"
