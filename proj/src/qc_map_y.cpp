#include "banklaine/qc_map_y.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "banklaine/qc_psi.hpp"

namespace banklaine::qc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const Complex kI(0.0, 1.0);
const Complex kGammaCenter(0.0, 1.0 / kSqrt2);

[[nodiscard]] Complex snap(Complex u) {
  if (u.imag() < 0.0 && u.real() > 0.0 && u.real() <= 1e-12 * std::max(1.0, std::abs(u))) {
    return {0.0, u.imag()};
  }
  return u;
}

[[nodiscard]] std::string point_text(Complex u) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u.real() << ", " << u.imag() << ")";
  return os.str();
}

[[nodiscard]] Complex unit(Complex a) {
  const double m = std::abs(a);
  if (!(m > 0.0) || !std::isfinite(m)) return {kNaN, kNaN};
  return a / m;
}

[[nodiscard]] Jacobian rotation(double angle) { return Jacobian::holomorphic(polar_unit(angle)); }

[[nodiscard]] double frobenius(const Jacobian& j) {
  return std::sqrt(j.a * j.a + j.b * j.b + j.c * j.c + j.d * j.d);
}

[[nodiscard]] bool finite_jacobian(const Jacobian& j) {
  return std::isfinite(j.a) && std::isfinite(j.b) && std::isfinite(j.c) && std::isfinite(j.d);
}

// Jacobian of psi at e^{iu} when |e^{iu}| overflows (far field of E1).
[[nodiscard]] Jacobian psi_jacobian_far(double s) {
  if (s < 0.0) return Jacobian::diagonal(kPsiAlpha, kSqrt2);
  return Jacobian::diagonal(kPsiAlpha, h_prime(1.0));
}

struct Fold {
  Complex q;
  bool neg_x;
  bool neg_y;
};

[[nodiscard]] Fold fold(Complex z) {
  return {{std::abs(z.real()), std::abs(z.imag())}, z.real() < 0.0, z.imag() < 0.0};
}

[[nodiscard]] Extended unfold(Extended w, const Fold& f) {
  if (f.neg_x) w = w.neg_conj();
  if (f.neg_y) w = w.conj();
  return w;
}

[[nodiscard]] double abs_mu_with_slope(double k, const Jacobian& shape) {
  return std::abs(beltrami(Jacobian::diagonal(1.0, k) * shape));
}

}  // namespace

const char* to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::kOutsideE0: return "OUTSIDE_E0";
    case RegionTag::kF1Region: return "F1_REGION";
    case RegionTag::kF2Region: return "F2_REGION";
    case RegionTag::kD1Interpolation: return "D1_INTERPOLATION";
    case RegionTag::kE3Member: return "E3_MEMBER";
    case RegionTag::kGamma1: return "GAMMA1";
    case RegionTag::kGamma2: return "GAMMA2";
    case RegionTag::kL0Path: return "L0_PATH";
  }
  return "UNKNOWN";
}

RegionTag region_of(Complex u_in) {
  const Complex u = snap(u_in);
  if (!is_finite(u)) return RegionTag::kOutsideE0;
  const double s = u.real();
  const double t = u.imag();
  if (s > 0.0 && t < 0.0) return RegionTag::kOutsideE0;
  if (s <= -0.5 * kPi) return RegionTag::kF1Region;
  if (s >= 0.5 * kPi) return RegionTag::kF2Region;
  return RegionTag::kD1Interpolation;
}

bool in_E3(Complex u_in) {
  const Complex u = snap(u_in);
  const RegionTag r = region_of(u);
  if (r == RegionTag::kOutsideE0) return false;
  const double s = u.real();
  if (s <= -kPi) return false;
  if (s < 0.5 * kPi) return true;
  if (s >= 1.5 * kPi) return false;
  const Complex v = std::exp(-u.imag()) * polar_unit(s);
  return std::abs(v - kGammaCenter) < 1.0 / kSqrt2;
}

RegionTag curve_of(Complex u_in, double tol) {
  const Complex u = snap(u_in);
  const RegionTag r = region_of(u);
  if (r == RegionTag::kOutsideE0) return r;
  const double s = u.real();
  const double t = u.imag();
  if (std::abs(s + kPi) <= tol) return RegionTag::kGamma1;
  if ((std::abs(t) <= tol && s >= -tol && s <= 0.75 * kPi + tol) || (std::abs(s) <= tol && t <= tol)) {
    return RegionTag::kL0Path;
  }
  if (s > 0.5 * kPi && s < 1.5 * kPi && t >= 0.0) {
    const Complex v = std::exp(-t) * polar_unit(s);
    if (std::abs(std::abs(v - kGammaCenter) - 1.0 / kSqrt2) <= tol) return RegionTag::kGamma2;
  }
  return r;
}

Complex H_map(Complex u_in) {
  const Complex u = snap(u_in);
  const double scale = std::exp(-u.imag());
  if (!std::isfinite(scale)) {
    return {std::numeric_limits<double>::infinity(), kNaN};
  }
  return psi_interpolant(scale * polar_unit(u.real()));
}

Extended F_from_psi(Complex u) {
  const Complex h = H_map(u);
  if (!std::isfinite(h.real())) return Extended::infinity();
  if (!std::isfinite(h.imag()) || std::abs(h.imag()) > 1e15) return {h.real(), kNaN};
  return Extended::from_log(h);
}

Extended glued_F(Complex u_in) {
  const Complex u = snap(u_in);
  switch (region_of(u)) {
    case RegionTag::kF1Region: return f1_map(u);
    case RegionTag::kF2Region: return f2_map(u);
    case RegionTag::kD1Interpolation: return F_from_psi(u);
    default: break;
  }
  throw Error(ErrorCode::kDomain, "u=" + point_text(u_in) + " lies outside Cl(D0)");
}

Jacobian log_F_jacobian_shape(Complex u_in) {
  const Complex u = snap(u_in);
  const double s = u.real();
  const Jacobian dv = rotation(s + 0.5 * kPi);  // phase of d/du e^{iu} = i e^{iu}
  switch (region_of(u)) {
    case RegionTag::kF1Region: return dv;
    case RegionTag::kF2Region: {
      const Complex v = std::exp(-u.imag()) * polar_unit(s);
      const Complex ph = unit(moebius_T_prime(v) / moebius_T(v));
      return Jacobian::holomorphic(ph) * dv;
    }
    case RegionTag::kD1Interpolation: {
      const double scale = std::exp(-u.imag());
      if (!std::isfinite(scale)) return psi_jacobian_far(s) * dv;
      return psi_jacobian(scale * polar_unit(s)) * dv;
    }
    default: break;
  }
  throw Error(ErrorCode::kDomain, "u=" + point_text(u_in) + " lies outside Cl(D0)");
}

double log_F_speed(Complex u_in) {
  const Complex u = snap(u_in);
  const double scale = std::exp(-u.imag());
  switch (region_of(u)) {
    case RegionTag::kF1Region: return kSqrt2 * scale;
    case RegionTag::kF2Region: return std::abs(f2_logderiv(u));
    case RegionTag::kD1Interpolation: {
      if (!std::isfinite(scale)) return std::numeric_limits<double>::infinity();
      return frobenius(psi_jacobian(scale * polar_unit(u.real()))) * scale;
    }
    default: break;
  }
  throw Error(ErrorCode::kDomain, "u=" + point_text(u_in) + " lies outside Cl(D0)");
}

Complex gamma2_point(double tau) {
  return -kI * std::log(moebius_T_inverse(tau * kOmega));
}

Gamma2Trace trace_gamma2(int steps, double tau_max) {
  if (steps < 10 || !(tau_max > 0.0 && tau_max < 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "gamma2 trace needs >= 10 steps and 0 < tau_max < 1");
  }
  // Uniform in sigma = -log(1 - tau), which resolves the escape to infinity.
  const double sigma_max = -std::log1p(-tau_max);
  auto rhs = [](Complex u) { return kOmega / f2_prime(u); };
  Gamma2Trace tr;
  tr.tau.reserve(steps + 1);
  tr.u.reserve(steps + 1);
  Complex u(0.75 * kPi, 0.0);
  double tau = 0.0;
  tr.tau.push_back(tau);
  tr.u.push_back(u);
  for (int i = 1; i <= steps; ++i) {
    const double next = -std::expm1(-sigma_max * i / steps);
    const double dt = next - tau;
    const Complex k1 = rhs(u);
    const Complex k2 = rhs(u + 0.5 * dt * k1);
    const Complex k3 = rhs(u + 0.5 * dt * k2);
    const Complex k4 = rhs(u + dt * k3);
    u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const Complex target = next * kOmega;
    for (int it = 0; it < 8; ++it) {
      const Complex v = std::exp(kI * u);
      const Complex r = moebius_T(v) - target;
      u -= r / f2_prime(u);
      if (std::abs(r) < 1e-15) break;
    }
    tau = next;
    if (!(u.real() > 0.5 * kPi && u.real() < 1.5 * kPi && u.imag() >= -1e-12) || !is_finite(u)) {
      throw Error(ErrorCode::kConstruction,
                  "gamma2 continuation left the half-strip at u=" + point_text(u));
    }
    tr.tau.push_back(tau);
    tr.u.push_back(u);
  }
  return tr;
}

Extended modified_V(Complex u) {
  const Extended f = glued_F(u);
  return in_E3(u) ? angular_L(f) : f;
}

Complex eta_map(Complex z) {
  const Complex zeta = kX0 + z * z;
  const double r = std::abs(zeta);
  const double a = std::atan2(std::max(zeta.imag(), 0.0), zeta.real());  // +0 keeps arg = pi
  if (a == kPi) return {0.0, -r * std::sqrt(r)};
  return r * std::sqrt(r) * polar_unit(1.5 * a);
}

Complex eta_prime(Complex z) {
  const Complex zeta = kX0 + z * z;
  const double r = std::abs(zeta);
  const double a = std::atan2(std::max(zeta.imag(), 0.0), zeta.real());
  return 3.0 * z * std::sqrt(r) * polar_unit(0.5 * a);
}

Complex eta_inverse(Complex u_in) {
  const Complex u = snap(u_in);
  if (region_of(u) == RegionTag::kOutsideE0) {
    throw Error(ErrorCode::kDomain, "u=" + point_text(u_in) + " lies outside Cl(D0)");
  }
  const double r = std::cbrt(std::abs(u) * std::abs(u));
  if (u.real() == 0.0 && u.imag() < 0.0) return {0.0, std::sqrt(r + kX0)};
  double a = std::atan2(u.imag(), u.real());
  if (a < 0.0) a += 2.0 * kPi;
  const Complex zeta = r * polar_unit(2.0 * a / 3.0) - kX0;
  const Complex z = std::sqrt(Complex(zeta.real(), std::max(zeta.imag(), 0.0)));
  return {std::max(z.real(), 0.0), std::max(z.imag(), 0.0)};
}

Extended pullback_Y(Complex z) {
  if (!is_finite(z)) return Extended::infinity();
  const Fold f = fold(z);
  return unfold(modified_V(eta_map(f.q)), f);
}

MuSample mu_Y_analytic(Complex z) {
  const Fold f = fold(z);
  const Complex u = snap(eta_map(f.q));
  MuSample out;
  const RegionTag piece = region_of(u);
  const bool e3 = in_E3(u);
  out.region = piece == RegionTag::kD1Interpolation ? piece : (e3 ? RegionTag::kE3Member : piece);
  if (!e3) {
    out.mu = 0.0;
    return out;
  }
  const Extended fv = glued_F(u);
  const Complex dq = unit(eta_prime(f.q));
  const Jacobian shape = log_F_jacobian_shape(u);
  if (!fv.arg_resolved() || !is_finite(dq) || !finite_jacobian(shape)) {
    out.mu = {kNaN, kNaN};
    out.resolved = false;
    return out;
  }
  const Jacobian j = Jacobian::diagonal(1.0, g_slope(fv.arg)) * shape * Jacobian::holomorphic(dq);
  const Complex mu = beltrami(j);
  out.mu = (f.neg_x != f.neg_y) ? std::conj(mu) : mu;
  return out;
}

double mu_V_abs(Complex u) {
  if (!in_E3(u)) {
    if (region_of(u) == RegionTag::kOutsideE0) {
      throw Error(ErrorCode::kDomain, "u=" + point_text(u) + " lies outside Cl(D0)");
    }
    return 0.0;
  }
  const Extended fv = glued_F(u);
  if (!fv.arg_resolved()) return kNaN;
  const Jacobian shape = log_F_jacobian_shape(u);
  if (!finite_jacobian(shape)) return kNaN;
  return abs_mu_with_slope(g_slope(fv.arg), shape);
}

double mu_V_abs_homogenized(Complex u) {
  if (!in_E3(u)) return 0.0;
  const Jacobian shape = log_F_jacobian_shape(u);
  if (!finite_jacobian(shape)) return kNaN;
  return abs_mu_with_slope(1.0, shape) / 6.0 + abs_mu_with_slope(0.25, shape) / 3.0 +
         abs_mu_with_slope(1.5, shape) / 2.0;
}

std::size_t YCensus::n_Y(double r) const {
  return census::counting_function(zeros, r) + census::counting_function(poles, r);
}

YCensus zero_pole_census_Y(double r_max) {
  if (!(r_max >= 10.0)) throw Error(ErrorCode::kInvalidInput, "Y census needs r_max >= 10");
  auto abscissa = [](double u) { return std::sqrt(std::max(std::cbrt(u * u) - kX0, 0.0)); };
  std::vector<double> zeros;
  std::vector<double> poles;
  for (long k = 0;; ++k) {
    const double x = abscissa((2.0 * k + 0.75) * kPi);
    if (x > r_max) break;
    zeros.push_back(x);
    if (x > 0.0) zeros.push_back(-x);
  }
  for (long k = 1;; ++k) {
    const double x = abscissa((2.0 * k + 0.25) * kPi);
    if (x > r_max) break;
    poles.push_back(x);
    poles.push_back(-x);
  }
  YCensus c;
  c.zeros = census::census_from_zeros(std::move(zeros), r_max);
  const auto np = poles.size();
  c.poles = census::census_from_zeros(std::move(poles), r_max, std::vector<int>(np, -1));
  return c;
}

QuasiregularMapY::QuasiregularMapY() : gamma2_(trace_gamma2()) {}

}  // namespace banklaine::qc
