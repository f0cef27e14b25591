#pragma once

#include <limits>

#include "banklaine/core.hpp"

namespace banklaine::qc {

/// Point of the extended plane stored as log|w| and an (unwrapped) argument.
/// Zero is log_abs = -inf, infinity is log_abs = +inf. The argument is NaN
/// when it cannot be resolved (overflowed modulus).
struct Extended {
  double log_abs = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  [[nodiscard]] static Extended from(Complex w);
  [[nodiscard]] static Extended from_log(Complex log_w) { return {log_w.real(), log_w.imag()}; }
  /// num/den without forming the quotient, so poles come out as +inf.
  [[nodiscard]] static Extended ratio(Complex num, Complex den);
  [[nodiscard]] static Extended zero() { return {}; }
  [[nodiscard]] static Extended infinity() {
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
  }

  [[nodiscard]] bool is_zero() const { return log_abs == -std::numeric_limits<double>::infinity(); }
  [[nodiscard]] bool is_infinite() const { return log_abs == std::numeric_limits<double>::infinity(); }
  [[nodiscard]] bool arg_resolved() const { return std::isfinite(arg); }
  /// Finite complex value; overflows to inf components for huge moduli.
  [[nodiscard]] Complex value() const;
  [[nodiscard]] Complex log() const { return {log_abs, arg}; }
  [[nodiscard]] Extended reciprocal() const { return {-log_abs, -arg}; }
  [[nodiscard]] Extended conj() const { return {log_abs, -arg}; }
  /// -conj(w).
  [[nodiscard]] Extended neg_conj() const { return {log_abs, kPi - arg}; }
};

/// Angle reduced to [0, 2pi).
[[nodiscard]] double reduce_angle(double theta);

/// Spherical-chordal distance between two extended points.
[[nodiscard]] double chordal_distance(const Extended& a, const Extended& b);

inline const Complex kOmega = polar_unit(kPi / 4.0);  // e^{i pi/4}

/// e^{i pi/4}(1 + e^{i pi/4} v)/(1 - e^{-i pi/4} v).
[[nodiscard]] Complex moebius_T(Complex v);
[[nodiscard]] Extended moebius_T_ext(Complex v);
[[nodiscard]] Complex moebius_T_prime(Complex v);
/// Inverse of T.
[[nodiscard]] Complex moebius_T_inverse(Complex w);

/// e^{i pi/4} exp(sqrt2 e^{iu}).
[[nodiscard]] Extended f1_map(Complex u);
/// T(e^{iu}).
[[nodiscard]] Extended f2_map(Complex u);
/// d/du log f1 and d/du log f2.
[[nodiscard]] Complex f1_logderiv(Complex u);
[[nodiscard]] Complex f2_logderiv(Complex u);
[[nodiscard]] Complex f2_prime(Complex u);

/// pi/4 + sqrt2 y for y <= 0, arg T(iy) for 0 < y <= 1.
[[nodiscard]] double h_boundary(double y);
[[nodiscard]] double h_prime(double y);

/// Piecewise-linear angle map through (0,0), (pi/3,pi/3), (pi,pi/2), (2pi,2pi).
[[nodiscard]] double g_angle(double theta);
/// Slope of g at theta (reduced); right-continuous at the nodes.
[[nodiscard]] double g_slope(double theta);
/// L(r e^{i theta}) = r e^{i g(theta)}.
[[nodiscard]] Extended angular_L(const Extended& w);
[[nodiscard]] Complex angular_L(Complex w);

/// Real Jacobian [[a, b], [c, d]] = [[dX/dx, dX/dy], [dY/dx, dY/dy]].
struct Jacobian {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  [[nodiscard]] static Jacobian holomorphic(Complex derivative);
  [[nodiscard]] static Jacobian diagonal(double p, double q) { return {p, 0.0, 0.0, q}; }
  [[nodiscard]] double det() const { return a * d - b * c; }
};

[[nodiscard]] Jacobian operator*(const Jacobian& p, const Jacobian& q);

/// f_zbar / f_z for the linear map with this Jacobian.
[[nodiscard]] Complex beltrami(const Jacobian& j);

/// Beltrami coefficient of L at angle theta: kappa e^{2i theta}, kappa = (1-k)/(1+k).
[[nodiscard]] Complex angular_L_mu(double theta);

}  // namespace banklaine::qc
