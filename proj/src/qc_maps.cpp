#include "banklaine/qc_maps.hpp"

#include <cmath>
#include <sstream>

namespace banklaine::qc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kArgLimit = 1e15;

struct SpherePoint {
  double x, y, z;
};

SpherePoint to_sphere(const Extended& w) {
  if (w.is_zero()) return {0.0, 0.0, -1.0};
  if (w.is_infinite()) return {0.0, 0.0, 1.0};
  const double sech = 1.0 / std::cosh(w.log_abs);
  const double th = std::tanh(w.log_abs);
  if (sech == 0.0 || !w.arg_resolved()) return {0.0, 0.0, th};
  return {sech * std::cos(w.arg), sech * std::sin(w.arg), th};
}

}  // namespace

Extended Extended::from(Complex w) {
  if (w == Complex{}) return zero();
  if (!is_finite(w)) return infinity();
  return {std::log(std::abs(w)), std::arg(w)};
}

Extended Extended::ratio(Complex num, Complex den) {
  if (num == Complex{} && den == Complex{}) {
    throw Error(ErrorCode::kDomain, "indeterminate ratio 0/0");
  }
  if (den == Complex{}) return infinity();
  if (num == Complex{}) return zero();
  return {std::log(std::abs(num)) - std::log(std::abs(den)), std::arg(num) - std::arg(den)};
}

Complex Extended::value() const {
  if (is_zero()) return {};
  if (is_infinite()) return {kInf, kInf};
  return std::polar(std::exp(log_abs), arg);
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r -= 2.0 * kPi;
  return r;
}

double chordal_distance(const Extended& a, const Extended& b) {
  const SpherePoint p = to_sphere(a);
  const SpherePoint q = to_sphere(b);
  return 0.5 * std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                         (p.z - q.z) * (p.z - q.z));
}

Complex moebius_T(Complex v) {
  const Complex den = 1.0 - std::conj(kOmega) * v;
  if (den == Complex{}) return {kInf, kInf};
  return kOmega * (1.0 + kOmega * v) / den;
}

Extended moebius_T_ext(Complex v) {
  if (!is_finite(v)) return Extended::from(std::conj(kOmega));
  return Extended::ratio(kOmega * (1.0 + kOmega * v), 1.0 - std::conj(kOmega) * v);
}

Complex moebius_T_prime(Complex v) {
  const Complex d = v - kOmega;
  return -kSqrt2 * std::conj(kOmega) / (d * d);
}

Complex moebius_T_inverse(Complex w) {
  return (Complex(0.0, 1.0) * w - polar_unit(0.75 * kPi)) / (w * kOmega - 1.0);
}

Extended f1_map(Complex u) {
  const double s = u.real();
  const double scale = std::exp(-u.imag());
  const double re = kSqrt2 * scale * std::cos(s);
  const double im = kPi / 4.0 + kSqrt2 * scale * std::sin(s);
  if (!std::isfinite(scale) || !std::isfinite(re)) {
    if (std::cos(s) > 0.0) return Extended::infinity();
    if (std::cos(s) < 0.0) return {-kInf, kNaN};
    return {0.0, kNaN};
  }
  return {re, std::abs(im) > kArgLimit ? kNaN : im};
}

Extended f2_map(Complex u) {
  const double scale = std::exp(-u.imag());
  if (!std::isfinite(scale)) return Extended::from(std::conj(kOmega));
  return moebius_T_ext(scale * polar_unit(u.real()));
}

Complex f1_logderiv(Complex u) {
  return Complex(0.0, kSqrt2) * std::exp(Complex(0.0, 1.0) * u);
}

Complex f2_prime(Complex u) {
  const Complex v = std::exp(Complex(0.0, 1.0) * u);
  return moebius_T_prime(v) * Complex(0.0, 1.0) * v;
}

Complex f2_logderiv(Complex u) {
  const Complex v = std::exp(Complex(0.0, 1.0) * u);
  return moebius_T_prime(v) / moebius_T(v) * Complex(0.0, 1.0) * v;
}

double h_boundary(double y) {
  if (!(y <= 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "h is defined for y <= 1, got " << y;
    throw Error(ErrorCode::kDomain, os.str());
  }
  if (y <= 0.0) return kPi / 4.0 + kSqrt2 * y;
  return kPi / 4.0 + 2.0 * std::atan2(y / kSqrt2, 1.0 - y / kSqrt2);
}

double h_prime(double y) {
  if (!(y <= 1.0)) throw Error(ErrorCode::kDomain, "h' is defined for y <= 1");
  if (y <= 0.0) return kSqrt2;
  return kSqrt2 / (1.0 - kSqrt2 * y + y * y);
}

double g_angle(double theta) {
  const double t = reduce_angle(theta);
  if (t <= kPi / 3.0) return t;
  if (t <= kPi) return kPi / 3.0 + 0.25 * (t - kPi / 3.0);
  return 0.5 * kPi + 1.5 * (t - kPi);
}

double g_slope(double theta) {
  const double t = reduce_angle(theta);
  if (t < kPi / 3.0) return 1.0;
  if (t < kPi) return 0.25;
  return 1.5;
}

Extended angular_L(const Extended& w) {
  if (w.is_zero() || w.is_infinite()) return w;
  if (!w.arg_resolved()) return {w.log_abs, kNaN};
  return {w.log_abs, g_angle(w.arg)};
}

Complex angular_L(Complex w) {
  if (w == Complex{} || !is_finite(w)) return w;
  return std::polar(std::abs(w), g_angle(std::arg(w)));
}

Jacobian Jacobian::holomorphic(Complex derivative) {
  return {derivative.real(), -derivative.imag(), derivative.imag(), derivative.real()};
}

Jacobian operator*(const Jacobian& p, const Jacobian& q) {
  return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c,
          p.c * q.b + p.d * q.d};
}

Complex beltrami(const Jacobian& j) {
  const Complex fz(0.5 * (j.a + j.d), 0.5 * (j.c - j.b));
  const Complex fzbar(0.5 * (j.a - j.d), 0.5 * (j.c + j.b));
  if (fz == Complex{}) throw Error(ErrorCode::kUnreliableSample, "f_z vanishes");
  return fzbar / fz;
}

Complex angular_L_mu(double theta) {
  const double k = g_slope(theta);
  return (1.0 - k) / (1.0 + k) * polar_unit(2.0 * theta);
}

}  // namespace banklaine::qc
