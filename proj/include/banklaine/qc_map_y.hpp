#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "banklaine/core.hpp"
#include "banklaine/qc_maps.hpp"
#include "banklaine/zero_census.hpp"

namespace banklaine::qc {

/// (3 pi/4)^{2/3}.
inline const double kX0 = std::cbrt(0.5625 * kPi * kPi);

enum class RegionTag {
  kOutsideE0,
  kF1Region,
  kF2Region,
  kD1Interpolation,
  kE3Member,
  kGamma1,
  kGamma2,
  kL0Path,
};

[[nodiscard]] const char* to_string(RegionTag tag);

/// Piece of Cl(D0) holding u = s + it: F1 (s <= -pi/2), F2 (s >= pi/2, t >= 0),
/// D1 (the rest), or kOutsideE0.
[[nodiscard]] RegionTag region_of(Complex u);
/// Boundary curve through u within tol (gamma1, gamma2, L0), else region_of(u).
[[nodiscard]] RegionTag curve_of(Complex u, double tol);
/// Component of E0 minus (gamma1, gamma2) containing D1.
[[nodiscard]] bool in_E3(Complex u);

/// exp(psi(e^{iu})) on Cl(D1).
[[nodiscard]] Extended F_from_psi(Complex u);
[[nodiscard]] Extended glued_F(Complex u);
/// H = log F on Cl(D1).
[[nodiscard]] Complex H_map(Complex u);

/// Real Jacobian of log F with respect to u, with holomorphic factors reduced
/// to unit phases (so it never overflows); and the true size of d log F / du.
[[nodiscard]] Jacobian log_F_jacobian_shape(Complex u);
[[nodiscard]] double log_F_speed(Complex u);

struct Gamma2Trace {
  std::vector<double> tau;
  std::vector<Complex> u;
};

/// Continuation of f2(u(tau)) = tau e^{i pi/4} from u(0) = 3pi/4, RK4 predictor
/// on du/dtau = e^{i pi/4}/f2'(u) with a Newton corrector.
[[nodiscard]] Gamma2Trace trace_gamma2(int steps = 2000, double tau_max = 0.999);
/// -i log T^{-1}(tau e^{i pi/4}).
[[nodiscard]] Complex gamma2_point(double tau);

[[nodiscard]] Extended modified_V(Complex u);

/// (x0 + z^2)^{3/2} on the closed first quadrant; arg u in [0, 3pi/2].
[[nodiscard]] Complex eta_map(Complex z);
[[nodiscard]] Complex eta_prime(Complex z);
[[nodiscard]] Complex eta_inverse(Complex u);

/// Y on the whole plane by double reflection (Y odd, real on the real axis).
[[nodiscard]] Extended pullback_Y(Complex z);

struct MuSample {
  Complex mu;
  RegionTag region = RegionTag::kOutsideE0;
  bool resolved = true;  // false when arg F cannot be resolved
};

/// Analytic Beltrami coefficient of Y by the chain rule.
[[nodiscard]] MuSample mu_Y_analytic(Complex z);
/// |mu_V(u)| = |mu_Y(eta^{-1}(u))|; NaN when unresolved.
[[nodiscard]] double mu_V_abs(Complex u);
/// Mean of |mu_V| over the three pieces of g, weighted by their angular length.
[[nodiscard]] double mu_V_abs_homogenized(Complex u);

struct YCensus {
  census::ZeroCensus zeros;
  census::ZeroCensus poles;

  [[nodiscard]] std::size_t n_Y(double r) const;
};

/// Closed-form zeros and poles of Y on [-r_max, r_max].
[[nodiscard]] YCensus zero_pole_census_Y(double r_max);

/// Evaluator handle bundling the fixed data of the construction.
class QuasiregularMapY {
 public:
  QuasiregularMapY();

  [[nodiscard]] double x0() const { return kX0; }
  [[nodiscard]] const Gamma2Trace& gamma2() const { return gamma2_; }
  [[nodiscard]] Extended operator()(Complex z) const { return pullback_Y(z); }
  [[nodiscard]] Extended V(Complex u) const { return modified_V(u); }

 private:
  Gamma2Trace gamma2_;
};

}  // namespace banklaine::qc
