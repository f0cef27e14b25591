#include "banklaine/ode.hpp"

namespace banklaine::ode {

ComplexPath::ComplexPath(std::vector<Complex> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "path needs at least two nodes");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!is_finite(nodes_[i])) throw Error(ErrorCode::kInvalidInput, "path node is not finite");
    if (i > 0 && nodes_[i] == nodes_[i - 1]) {
      throw Error(ErrorCode::kInvalidInput, "consecutive path nodes coincide");
    }
  }
}

ComplexPath ComplexPath::segment(Complex from, Complex to) { return ComplexPath({from, to}); }

double ComplexPath::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) total += std::abs(nodes_[i] - nodes_[i - 1]);
  return total;
}

std::vector<Jet> propagate(const CoefficientFunction& coefficient, std::span<const Jet> initial,
                           const ComplexPath& path, const StepperOptions& options) {
  return propagate(coefficient, initial, path, options, [](Complex, std::span<const Jet>) {});
}

Trace integrate_ivp(const CoefficientFunction& coefficient, Complex start, Complex value,
                    Complex slope, const ComplexPath& path, double tolerance) {
  if (std::abs(path.front() - start) > 1e-14 * std::max(1.0, std::abs(start))) {
    throw Error(ErrorCode::kInvalidInput, "path must begin at the start point");
  }
  StepperOptions options;
  options.tolerance = tolerance;
  Trace trace;
  trace.push_back({start, value, slope});
  const Jet init{value, slope};
  propagate(coefficient, std::span<const Jet>(&init, 1), path, options,
            [&trace](Complex z, std::span<const Jet> jets) {
              trace.push_back({z, jets[0].value, jets[0].slope});
            });
  return trace;
}

SolutionPair solution_pair(CoefficientFunction coefficient, Complex base_point, double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  return SolutionPair{std::move(coefficient), base_point, {1.0, 0.0}, {0.0, 1.0}, tolerance};
}

PairJet SolutionPair::evaluate(Complex z) const {
  if (z == base_point) return {z, init1.value, init1.slope, init2.value, init2.slope};
  return evaluate_along(ComplexPath::segment(base_point, z));
}

PairJet SolutionPair::evaluate_along(const ComplexPath& path) const {
  if (std::abs(path.front() - base_point) > 1e-14 * std::max(1.0, std::abs(base_point))) {
    throw Error(ErrorCode::kInvalidInput, "path must begin at the base point");
  }
  StepperOptions options;
  options.tolerance = tolerance;
  const Jet init[2] = {init1, init2};
  const auto out = propagate(coefficient, init, path, options);
  return {path.back(), out[0].value, out[0].slope, out[1].value, out[1].slope};
}

Complex wronskian_at(const SolutionPair& pair, Complex z, const ComplexPath& path) {
  if (std::abs(path.back() - z) > 1e-14 * std::max(1.0, std::abs(z))) {
    throw Error(ErrorCode::kInvalidInput, "path must end at z");
  }
  return pair.evaluate_along(path).wronskian();
}

PairContinuation::PairContinuation(SolutionPair pair, double anchor_spacing)
    : pair_(std::move(pair)), anchor_spacing_(anchor_spacing) {
  last_ = {pair_.base_point, pair_.init1.value, pair_.init1.slope, pair_.init2.value,
           pair_.init2.slope};
  anchors_.push_back(last_);
}

PairJet PairContinuation::at(Complex z) {
  const PairJet* from = &last_;
  double best = std::abs(z - last_.z);
  double nearest_anchor = std::numeric_limits<double>::infinity();
  for (const auto& a : anchors_) {
    const double d = std::abs(z - a.z);
    nearest_anchor = std::min(nearest_anchor, d);
    if (d < best) {
      best = d;
      from = &a;
    }
  }
  if (best == 0.0) return *from;

  StepperOptions options;
  options.tolerance = pair_.tolerance;
  auto continue_from = [&](const PairJet& start) {
    const Jet init[2] = {{start.f1, start.df1}, {start.f2, start.df2}};
    const auto out = propagate(pair_.coefficient, init, ComplexPath::segment(start.z, z), options);
    return PairJet{z, out[0].value, out[0].slope, out[1].value, out[1].slope};
  };
  PairJet next = continue_from(*from);
  // leaving a region where both solutions are large loses the subdominant part
  const Complex w0 = anchors_.front().wronskian();
  const double w_scale = std::abs(next.f1 * next.df2) + std::abs(next.f2 * next.df1);
  if (from != &anchors_.front() && !(std::abs(next.wronskian() - w0) <= 1e-10 * std::max(std::abs(w0), w_scale))) {
    next = continue_from(anchors_.front());
  }
  last_ = next;
  if (nearest_anchor >= anchor_spacing_) anchors_.push_back(last_);
  return last_;
}

}  // namespace banklaine::ode
