#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "banklaine/bank_laine.hpp"
#include "banklaine/core.hpp"

namespace banklaine::sweeps {

/// Every kernel has a serial reference path. Both paths reduce per-row
/// partial results in row order, so their outputs are bit-identical.
enum class Execution { kSerial, kParallel };

/// Caps the OpenMP team size; n <= 0 restores the runtime default.
void set_thread_cap(int n);
[[nodiscard]] int thread_cap();

struct SupSweep {
  int n = 0;
  double k_max = 0.0;
  std::size_t samples = 0;
  std::size_t unresolved = 0;
};

/// max |mu_Y| over the n x n u-grid s in [-2pi, 2pi], t in [-12, 12] (points of Cl(D0)).
[[nodiscard]] SupSweep dilatation_sup(int n, Execution exec);

enum class RegionFilter { kAll, kMeromorphicOnly };

struct IntegrabilityGrid {
  int ns = 0;
  int nw = 0;
  double r_max = 0.0;
  double total = 0.0;
  std::vector<double> annulus;  // contribution of 2^j <= |z| < 2^{j+1}
  std::size_t cells = 0;
  std::size_t subsampled_cells = 0;
  std::size_t homogenized_cells = 0;
};

/// Integral of |mu_Y|/|z|^2 over F4 and 1 <= |z| <= r_max, computed on the
/// u-side grid s in (-2pi, 2pi) x t = sign(w)(e^{|w|} - 1).
[[nodiscard]] IntegrabilityGrid integrability_grid(int ns, int nw, double r_max, Execution exec,
                                                   RegionFilter filter = RegionFilter::kAll);

/// |bl_residual| at each point; NaN where E vanishes.
[[nodiscard]] std::vector<double> bl_residuals(const bl::BankLaineFunction& e,
                                               std::span<const Complex> points, Execution exec);

struct GammaSamples {
  std::vector<double> values;  // log+ log+ |Y|, skipped samples excluded
  std::size_t skipped = 0;
};

/// Samples of log+ log+ |Y| on Gamma_n: per_quadrant points of |x0 + z^2| = (n pi)^{2/3}
/// in the first quadrant and their three reflections.
[[nodiscard]] GammaSamples gamma_n_samples(int n, int per_quadrant, Execution exec);

}  // namespace banklaine::sweeps
