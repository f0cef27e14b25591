#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "banklaine/core.hpp"

namespace banklaine::census {

struct ValueSlope {
  Complex value;
  Complex slope;
};

using RealFunction = std::function<ValueSlope(double)>;
using PlaneFunction = std::function<ValueSlope(Complex)>;
using ComplexFunction = std::function<Complex(Complex)>;

struct ZeroCensus {
  std::vector<double> zeros;  // strictly increasing
  std::vector<int> signs;     // sign of f' at each zero
  std::vector<double> abs_value;
  std::vector<double> abs_slope_minus_sign;
  double radius_max = 0.0;
};

/// Census of planted abscissae (sorted and deduplicated here); signs default to +1.
[[nodiscard]] ZeroCensus census_from_zeros(std::vector<double> zeros, double radius_max,
                                           std::vector<int> signs = {});

/// Scans [a, b] with the given step, refines every sign change by
/// safeguarded Newton and subdivides cells where f' changes sign while |f| is
/// small compared with |f'|*step.
[[nodiscard]] ZeroCensus real_zeros_scan(const RealFunction& f, double a, double b,
                                         double initial_step);

struct Rectangle {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

/// Argument-principle count of zeros inside the rectangle.
[[nodiscard]] int count_zeros_region(const PlaneFunction& f, const Rectangle& rect);
[[nodiscard]] int count_zeros_region(const ComplexFunction& f, const ComplexFunction& df,
                                     const Rectangle& rect);

/// #{x in zeros : |x| <= r}.
[[nodiscard]] std::size_t counting_function(const ZeroCensus& census, double r);

struct ExponentEstimate {
  double lambda_fit = 0.0;
  double lambda_series = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  double residual = 0.0;
  std::size_t zeros_in_window = 0;
};

/// Least-squares slope of log n(r) against log r, 40 log-spaced samples per
/// decade, plus the exponent s at which the sums of |x|^-s over the lower and
/// upper geometric halves of the window balance.
[[nodiscard]] ExponentEstimate convergence_exponent(const ZeroCensus& census, double r_min,
                                                    double r_max);

/// Ordinary least-squares slope of y against x.
[[nodiscard]] double fit_slope(std::span<const double> x, std::span<const double> y,
                               double* rms_residual = nullptr);

struct AlternationResult {
  bool ok = true;
  std::ptrdiff_t first_violation = -1;  // index i with signs[i] == signs[i-1]
};

[[nodiscard]] AlternationResult sign_alternation_check(const ZeroCensus& census);

struct OrderEstimate {
  double order = 0.0;
  std::size_t usable = 0;  // radii used, a prefix of the input
  double r_first = 0.0;
  double r_last = 0.0;
  bool truncated = false;
};

/// Slope of log log max_{|z|=r}|f| against log r, 256 angles per circle.
/// Stops at the first radius where the maximum overflows.
[[nodiscard]] OrderEstimate estimate_order(const ComplexFunction& f, std::span<const double> radii);

/// CSV `x,sign,abs_E,abs_Eprime_minus_sign`, with an extra `kind` column when given.
void write_census_csv(std::ostream& os, const ZeroCensus& census, const std::string& kind = {},
                      bool header = true);

}  // namespace banklaine::census
