#include "banklaine/qc_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "banklaine/qc_psi.hpp"

namespace banklaine::qc {

namespace {

const Complex kI(0.0, 1.0);

[[noreturn]] void unreliable(Complex z, const char* why) {
  std::ostringstream os;
  os.precision(17);
  os << "unreliable dilatation sample at z=(" << z.real() << ", " << z.imag() << "): " << why;
  throw Error(ErrorCode::kUnreliableSample, os.str());
}

// |a - b| without leaving log-polar form.
double gap(const Extended& a, const Extended& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite() ? 0.0 : INFINITY;
  if (a.is_zero()) return std::exp(b.log_abs);
  if (b.is_zero()) return std::exp(a.log_abs);
  // |a| |e^w - 1| with e^w - 1 = expm1(Re w) e^{i Im w} + 2i sin(Im w / 2) e^{i Im w / 2}
  const double dl = b.log_abs - a.log_abs;
  const double da = b.arg - a.arg;
  const Complex em1 = std::expm1(dl) * polar_unit(da) + Complex(0.0, 2.0 * std::sin(0.5 * da)) * polar_unit(0.5 * da);
  return std::exp(a.log_abs) * std::abs(em1);
}

}  // namespace

MuEstimate dilatation_mu_estimate(const ExtendedMap& map, Complex z, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidInput, "difference step must be positive");
  const Extended c = map(z);
  if (!std::isfinite(c.log_abs) || !c.arg_resolved()) unreliable(z, "zero, pole or unresolved value");
  double max_turn = 0.0;
  auto logmap = [&](Complex p) {
    const Extended e = map(p);
    if (!std::isfinite(e.log_abs) || !e.arg_resolved()) unreliable(z, "zero, pole or unresolved value nearby");
    const double turns = std::round((c.arg - e.arg) / (2.0 * kPi));
    const double arg = e.arg + 2.0 * kPi * turns;
    max_turn = std::max(max_turn, std::abs(arg - c.arg));
    return Complex(e.log_abs, arg);
  };
  // size the step from a fine probe so that level increments stay well below pi;
  // otherwise nearest-turn unwrapping can alias consistently across levels
  const double probe = step / 1024.0;
  double probe_inc = 0.0;
  for (const Complex d : {Complex(1.0, 0.0), Complex(-1.0, 0.0), kI, -kI}) {
    probe_inc = std::max(probe_inc, std::abs(logmap(z + probe * d) - Complex(c.log_abs, c.arg)));
  }
  if (probe_inc > 0.5) unreliable(z, "argument winds too fast");
  const double h = probe_inc > 0.0 ? std::min(step, 0.2 * probe / probe_inc) : step;
  auto level = [&](double d) {
    max_turn = 0.0;
    const Complex fx = (logmap(z + d) - logmap(z - d)) / (2.0 * d);
    const Complex fy = (logmap(z + kI * d) - logmap(z - kI * d)) / (2.0 * d);
    return std::pair{fx, fy};
  };
  const auto [fx1, fy1] = level(h);
  const auto [fx2, fy2] = level(0.5 * h);
  const auto [fx3, fy3] = level(0.25 * h);
  if (max_turn > 0.5) unreliable(z, "argument winds too fast");
  // all three levels must agree to leading order; a kink or aliasing breaks this
  const double size = std::abs(fx3) + std::abs(fy3);
  const double floor = 1e6 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::abs(c.log_abs) + std::abs(c.arg)) / (0.25 * h);
  if (!(size > floor)) unreliable(z, "variation below rounding");
  if (std::abs(fx1 - fx3) + std::abs(fy1 - fy3) > 1e-3 * size ||
      std::abs(fx2 - fx3) + std::abs(fy2 - fy3) > 1e-3 * size) {
    unreliable(z, "levels disagree");
  }
  auto ratio = [&](Complex fx, Complex fy) {
    const Complex fz = 0.5 * (fx - kI * fy);
    const Complex fzbar = 0.5 * (fx + kI * fy);
    if (!is_finite(fz) || !is_finite(fzbar)) unreliable(z, "non-finite difference");
    if (std::abs(fz) <= 1e-12 * (std::abs(fx) + std::abs(fy))) unreliable(z, "f_z vanishes");
    return std::pair{fzbar / fz, std::abs(fz)};
  };
  const auto [mu, fz_abs] = ratio((4.0 * fx2 - fx1) / 3.0, (4.0 * fy2 - fy1) / 3.0);
  const auto [mu_fine, fz_fine] = ratio((4.0 * fx3 - fx2) / 3.0, (4.0 * fy3 - fy2) / 3.0);
  (void)fz_fine;
  // rounding in log map(p) shows up divided by the step
  const double noise = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(c.log_abs) + std::abs(c.arg));
  const double derivative_noise = 2.0 * noise / h;
  MuEstimate out;
  out.mu = mu;
  out.error = std::abs(mu - mu_fine) + 2.0 * derivative_noise * (1.0 + std::abs(mu)) / fz_abs;
  return out;
}

Complex dilatation_mu(const ExtendedMap& map, Complex z, double step) {
  return dilatation_mu_estimate(map, z, step).mu;
}

DilatationSample dilatation_sample_Y(Complex z) {
  const double h = 1e-4 * std::max(1.0, std::abs(z));
  DilatationSample s;
  s.z = z;
  const MuEstimate m = dilatation_mu_estimate(pullback_Y, z, h);
  s.mu = m.mu;
  s.error = m.error;
  s.region = mu_Y_analytic(z).region;
  return s;
}

QuasiconformalityReport quasiconformality_check(sweeps::Execution exec) {
  QuasiconformalityReport rep;
  double lo = 1.0;
  for (int n : {100, 200, 400}) {
    rep.levels.push_back(sweeps::dilatation_sup(n, exec));
    rep.k_max = std::max(rep.k_max, rep.levels.back().k_max);
    lo = std::min(lo, rep.levels.back().k_max);
  }
  rep.spread = rep.k_max > 0.0 ? (rep.k_max - lo) / rep.k_max : 0.0;
  rep.psi_k = psi_max_dilatation(400);
  return rep;
}

IntegrabilityReport integrability_check(double r_max, sweeps::Execution exec) {
  IntegrabilityReport rep;
  for (auto [ns, nw] : {std::pair{64, 512}, std::pair{128, 1024}, std::pair{256, 2048}}) {
    rep.levels.push_back(sweeps::integrability_grid(ns, nw, r_max, exec));
  }
  const auto& fine = rep.levels[2];
  const auto& mid = rep.levels[1];
  rep.value = fine.total;
  rep.relative_change = std::abs(fine.total - mid.total) / std::max(fine.total, 1e-300);
  const int last = std::min<int>(6, static_cast<int>(std::floor(std::log2(r_max))) - 1);
  rep.annuli_decay = last > 3;
  for (int j = 4; j <= last; ++j) {
    if (!(fine.annulus[static_cast<std::size_t>(j)] < fine.annulus[static_cast<std::size_t>(j - 1)])) {
      rep.annuli_decay = false;
    }
  }
  return rep;
}

GammaNPoint growth_check_Gamma_n(int n, sweeps::Execution exec) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "Gamma_n needs n >= 2");
  const auto samples = sweeps::gamma_n_samples(n, 128, exec);
  GammaNPoint p;
  p.n = n;
  p.samples_skipped = samples.skipped;
  for (double v : samples.values) p.max_loglog = std::max(p.max_loglog, v);
  return p;
}

GammaFit fit_gamma_growth(int n_min, int n_max, sweeps::Execution exec) {
  if (n_min < 2 || n_max < n_min + 2) {
    throw Error(ErrorCode::kInvalidInput, "Gamma_n fit needs 2 <= n_min and at least 3 values of n");
  }
  GammaFit fit;
  double snv = 0.0;
  double snn = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    fit.points.push_back(growth_check_Gamma_n(n, exec));
    snv += n * fit.points.back().max_loglog;
    snn += static_cast<double>(n) * n;
  }
  fit.C = snv / snn;
  double res = 0.0;
  double norm = 0.0;
  for (const auto& p : fit.points) {
    const double e = p.max_loglog - fit.C * p.n;
    res += e * e;
    norm += p.max_loglog * p.max_loglog;
  }
  fit.relative_rms = norm > 0.0 ? std::sqrt(res / norm) : 0.0;
  return fit;
}

double census_slope_Y(const YCensus& census, double r_min, double r_max) {
  if (!(r_min > 0.0 && r_max > r_min)) throw Error(ErrorCode::kInvalidInput, "slope window must satisfy 0 < r_min < r_max");
  const int samples = std::max(2, static_cast<int>(std::ceil(40.0 * std::log10(r_max / r_min))) + 1);
  std::vector<double> x;
  std::vector<double> y;
  for (int k = 0; k < samples; ++k) {
    const double r = r_min * std::pow(r_max / r_min, static_cast<double>(k) / (samples - 1));
    const auto n = census.n_Y(r);
    if (n == 0) continue;
    x.push_back(std::log(r));
    y.push_back(std::log(static_cast<double>(n)));
  }
  return census::fit_slope(x, y);
}

SeamReport seam_continuity(int points) {
  if (points < 2) throw Error(ErrorCode::kInvalidInput, "seam check needs at least two points");
  SeamReport rep;
  rep.points = points;
  for (int k = 0; k < points; ++k) {
    const double a = static_cast<double>(k) / (points - 1);
    const Complex left(-0.5 * kPi, -12.0 + 24.0 * a);
    rep.f1_seam = std::max(rep.f1_seam, gap(f1_map(left), F_from_psi(left)));
    const Complex right(0.5 * kPi, 12.0 * a);
    rep.f2_seam = std::max(rep.f2_seam, gap(f2_map(right), F_from_psi(right)));
  }
  return rep;
}

void write_dilatation_csv(std::ostream& os, const std::vector<DilatationSample>& samples) {
  const auto old = os.precision(17);
  os << "re_z,im_z,re_mu,im_mu,abs_mu,region\n";
  for (const auto& s : samples) {
    os << s.z.real() << "," << s.z.imag() << "," << s.mu.real() << "," << s.mu.imag() << ","
       << std::abs(s.mu) << "," << to_string(s.region) << "\n";
  }
  os.precision(old);
}

}  // namespace banklaine::qc
