#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace banklaine::ode {

namespace detail {

[[nodiscard]] inline std::string format_point(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace detail

template <class OnStep>
std::vector<Jet> propagate(const CoefficientFunction& coefficient, std::span<const Jet> initial,
                           const ComplexPath& path, const StepperOptions& options, OnStep&& on_step) {
  if (!(options.tolerance > 0.0) || options.order < 4) {
    throw Error(ErrorCode::kInvalidInput, "stepper tolerance must be positive and order >= 4");
  }
  const int order = options.order;
  const std::size_t nsol = initial.size();
  std::vector<Jet> jets(initial.begin(), initial.end());
  if (nsol == 0) return jets;

  // Series for y carries indices 0..order+1 so that y' is also of full order.
  const std::size_t nterms = static_cast<std::size_t>(order) + 2;
  std::vector<Complex> a(nterms);
  std::vector<Complex> series(nsol * nterms);
  const bool analytic = !coefficient.is_polynomial();

  int steps = 0;
  const auto& nodes = path.nodes();
  double h_prev = 0.25;
  for (std::size_t seg = 0; seg + 1 < nodes.size(); ++seg) {
    const Complex from = nodes[seg];
    const Complex to = nodes[seg + 1];
    const double seg_len = std::abs(to - from);
    const Complex dir = (to - from) / seg_len;
    double s = 0.0;
    while (s < seg_len) {
      if (++steps > options.max_steps) {
        throw Error(ErrorCode::kStiffness,
                    "step budget exhausted near z=" + detail::format_point(from + dir * s));
      }
      const Complex z = (s == 0.0) ? from : from + dir * s;
      const double radius = analytic ? std::max(2.0 * h_prev, 1e-3) : 1.0;
      coefficient.taylor(z, radius, a);
      if (!is_finite(a[0])) {
        throw Error(ErrorCode::kIntegrationDomain,
                    "coefficient is not finite at z=" + detail::format_point(z));
      }

      double scale = 1.0;
      std::vector<double> norm(nterms, 0.0);
      for (std::size_t j = 0; j < nsol; ++j) {
        Complex* y = &series[j * nterms];
        y[0] = jets[j].value;
        y[1] = jets[j].slope;
        for (std::size_t k = 0; k + 2 < nterms; ++k) {
          Complex acc{};
          for (std::size_t i = 0; i <= k; ++i) acc += a[i] * y[k - i];
          y[k + 2] = -acc / static_cast<double>((k + 1) * (k + 2));
        }
        scale = std::max({scale, std::abs(y[0]), std::abs(y[1])});
        for (std::size_t k = 0; k < nterms; ++k) norm[k] = std::max(norm[k], std::abs(y[k]));
      }
      if (!std::isfinite(scale)) {
        throw Error(ErrorCode::kIntegrationDomain,
                    "solution overflowed near z=" + detail::format_point(z));
      }

      // Truncation terms |y_k| h^k for the two highest orders bound the local error.
      const double eps = options.tolerance * scale / static_cast<double>(order + 2);
      double h = std::numeric_limits<double>::infinity();
      for (std::size_t k = nterms - 2; k < nterms; ++k) {
        if (norm[k] > 0.0) h = std::min(h, std::pow(eps / norm[k], 1.0 / static_cast<double>(k)));
      }
      h *= 0.7;
      if (analytic) h = std::min(h, 0.5 * radius);
      if (!std::isfinite(h)) h = seg_len - s;
      const double floor = 1e-13 * std::max(1.0, std::abs(z));
      const bool last = (h >= seg_len - s);
      if (last) h = seg_len - s;
      if (!last && h < floor) {
        throw Error(ErrorCode::kStiffness, "step size underflow at z=" + detail::format_point(z));
      }

      const Complex delta = dir * h;
      for (std::size_t j = 0; j < nsol; ++j) {
        const Complex* y = &series[j * nterms];
        Complex value{};
        Complex slope{};
        for (std::size_t k = nterms; k-- > 0;) {
          value = value * delta + y[k];
          if (k > 0) slope = slope * delta + static_cast<double>(k) * y[k];
        }
        if (!is_finite(value) || !is_finite(slope)) {
          throw Error(ErrorCode::kIntegrationDomain,
                      "solution overflowed near z=" + detail::format_point(z));
        }
        jets[j] = {value, slope};
      }
      if (last) {
        s = seg_len;
      } else {
        s += h;
        h_prev = h;
      }
      on_step(last ? to : from + dir * s, std::span<const Jet>(jets));
    }
  }
  return jets;
}

}  // namespace banklaine::ode
