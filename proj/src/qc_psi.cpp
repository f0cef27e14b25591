#include "banklaine/qc_psi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace banklaine::qc {

namespace {

constexpr double kSlack = 1e-12;

void require_D3(Complex zeta) {
  if (!in_closed_D3(zeta)) {
    std::ostringstream os;
    os.precision(17);
    os << "psi is defined on Cl(D3), got (" << zeta.real() << ", " << zeta.imag() << ")";
    throw Error(ErrorCode::kDomain, os.str());
  }
}

[[nodiscard]] Complex clamp_axis(Complex zeta) { return {std::max(zeta.real(), 0.0), zeta.imag()}; }

[[nodiscard]] double sheared_height(Complex p) {
  const double w = p.imag() + std::min(p.real(), 1.0);
  return std::min(w, 1.0);
}

}  // namespace

bool in_closed_D3(Complex zeta) {
  if (!is_finite(zeta)) return false;
  const double tol = kSlack * std::max(1.0, std::abs(zeta));
  if (zeta.real() < -tol) return false;
  return zeta.imag() <= 0.0 || std::abs(zeta) <= 1.0 + tol;
}

Complex psi_fold(Complex zeta) {
  const Complex z = clamp_axis(zeta);
  if (z.imag() <= 0.0) return z;
  const double sum = z.real() + z.imag();
  if (sum == 0.0) return {};
  return z * (std::abs(z) / sum);
}

Jacobian psi_fold_jacobian(Complex zeta) {
  const Complex z = clamp_axis(zeta);
  if (z.imag() <= 0.0) return {};
  const double x = z.real();
  const double y = z.imag();
  const double rho = std::abs(z);
  const double sum = x + y;
  if (rho == 0.0) return {};
  const double q = rho / sum;
  const double qx = x / (rho * sum) - rho / (sum * sum);
  const double qy = y / (rho * sum) - rho / (sum * sum);
  return {q + x * qx, x * qy, y * qx, q + y * qy};
}

Complex psi_interpolant(Complex zeta) {
  require_D3(zeta);
  const Complex p = psi_fold(zeta);
  return {kPsiAlpha * p.real(), h_boundary(sheared_height(p))};
}

Jacobian psi_jacobian(Complex zeta) {
  require_D3(zeta);
  const Complex p = psi_fold(zeta);
  const double hp = h_prime(sheared_height(p));
  const Jacobian s = (p.real() < 1.0) ? Jacobian{kPsiAlpha, 0.0, hp, hp}
                                       : Jacobian{kPsiAlpha, 0.0, 0.0, hp};
  return s * psi_fold_jacobian(zeta);
}

double psi_max_dilatation(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "grid needs at least 2 samples");
  double kmax = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = (i + 0.5) / n;
      const double phi = 0.5 * kPi * (j + 0.5) / n;
      kmax = std::max(kmax, std::abs(beltrami(psi_jacobian(std::polar(r, phi)))));
      const Complex q((i + 0.5) * 4.0 / n, -(j + 0.5) * 4.0 / n);
      kmax = std::max(kmax, std::abs(beltrami(psi_jacobian(q))));
    }
  }
  return kmax;
}

}  // namespace banklaine::qc
