#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "banklaine/core.hpp"
#include "banklaine/qc_map_y.hpp"
#include "banklaine/sweeps.hpp"

namespace banklaine::qc {

struct DilatationSample {
  Complex z;
  Complex mu;
  double error = 0.0;  // estimated |mu| uncertainty
  RegionTag region = RegionTag::kOutsideE0;
};

using ExtendedMap = std::function<Extended(Complex)>;

/// f_zbar / f_z of `map` at z from central Wirtinger differences of log map
/// (arguments unwrapped to the centre), one Richardson level over steps h, h/2.
/// h is the given step, reduced when a probe at step/1024 shows fast turning.
/// A third level h/4 checks consistency and feeds the error estimate.
/// Throws kUnreliableSample near zeros, poles or critical points.
[[nodiscard]] Complex dilatation_mu(const ExtendedMap& map, Complex z, double step);

struct MuEstimate {
  Complex mu;
  double error = 0.0;  // Richardson disagreement plus rounding bound
};
[[nodiscard]] MuEstimate dilatation_mu_estimate(const ExtendedMap& map, Complex z, double step);

/// Finite-difference sample of Y with step 1e-4 max(1, |z|) and region tag.
[[nodiscard]] DilatationSample dilatation_sample_Y(Complex z);

struct QuasiconformalityReport {
  std::vector<sweeps::SupSweep> levels;  // n = 100, 200, 400
  double k_max = 0.0;
  double spread = 0.0;  // (max - min)/max of the per-level k_max
  double psi_k = 0.0;
};

[[nodiscard]] QuasiconformalityReport quasiconformality_check(
    sweeps::Execution exec = sweeps::Execution::kParallel);

struct IntegrabilityReport {
  std::vector<sweeps::IntegrabilityGrid> levels;  // (64,512), (128,1024), (256,2048)
  double value = 0.0;             // finest total
  double relative_change = 0.0;   // between the two finest totals
  bool annuli_decay = false;      // j = 3..min(6, last full annulus) strictly decreasing
};

[[nodiscard]] IntegrabilityReport integrability_check(
    double r_max = 128.0, sweeps::Execution exec = sweeps::Execution::kParallel);

struct GammaNPoint {
  int n = 0;
  double max_loglog = 0.0;
  std::size_t samples_skipped = 0;
};

/// max log+ log+ |Y| over 512 samples of Gamma_n.
[[nodiscard]] GammaNPoint growth_check_Gamma_n(int n,
                                               sweeps::Execution exec = sweeps::Execution::kParallel);

struct GammaFit {
  std::vector<GammaNPoint> points;
  double C = 0.0;             // least squares of max_loglog ~ C n through the origin
  double relative_rms = 0.0;  // sqrt(sum (v - C n)^2 / sum v^2)
};

[[nodiscard]] GammaFit fit_gamma_growth(int n_min, int n_max,
                                        sweeps::Execution exec = sweeps::Execution::kParallel);

/// Least-squares slope of log n_Y(r) against log r, 40 log-spaced radii per decade.
[[nodiscard]] double census_slope_Y(const YCensus& census, double r_min, double r_max);

struct SeamReport {
  double f1_seam = 0.0;  // max |f1 - exp(H)| on Re u = -pi/2, t in [-12, 12]
  double f2_seam = 0.0;  // max |f2 - exp(H)| on Re u = pi/2, t in [0, 12]
  int points = 0;
};

[[nodiscard]] SeamReport seam_continuity(int points);

/// CSV `re_z,im_z,re_mu,im_mu,abs_mu,region`.
void write_dilatation_csv(std::ostream& os, const std::vector<DilatationSample>& samples);

}  // namespace banklaine::qc
