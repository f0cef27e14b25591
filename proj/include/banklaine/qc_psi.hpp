#pragma once

#include "banklaine/core.hpp"
#include "banklaine/qc_maps.hpp"

namespace banklaine::qc {

/// Horizontal stretch of the interpolant.
inline constexpr double kPsiAlpha = 2.0;

/// True when zeta lies in Cl(D3): Re >= 0 and (Im <= 0 or |zeta| <= 1).
[[nodiscard]] bool in_closed_D3(Complex zeta);

/// Radial map of the closed quarter disk onto the triangle x + y <= 1;
/// identity on the rest of Cl(D3).
[[nodiscard]] Complex psi_fold(Complex zeta);
[[nodiscard]] Jacobian psi_fold_jacobian(Complex zeta);

/// Quasiconformal homeomorphism Cl(D3) -> Cl(D4) with psi(iy) = i h(y) and the
/// arc/ray boundary sent increasingly onto {sigma + i pi : sigma >= 0}.
/// psi = S o P with S(x, y) = alpha x + i h(y + min(x, 1)).
[[nodiscard]] Complex psi_interpolant(Complex zeta);
[[nodiscard]] Jacobian psi_jacobian(Complex zeta);

/// Sup of |mu_psi| over a polar grid of the quarter disk and a patch of the
/// fourth quadrant, n samples per direction.
[[nodiscard]] double psi_max_dilatation(int n);

}  // namespace banklaine::qc
