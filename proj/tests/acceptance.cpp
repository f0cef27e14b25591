// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "banklaine/bank_laine.hpp"
#include "banklaine/harness.hpp"
#include "banklaine/qc_analysis.hpp"
#include "banklaine/qc_map_y.hpp"
#include "banklaine/qc_maps.hpp"
#include "banklaine/zero_census.hpp"

using namespace banklaine;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bl::BankLaineFunction pair_function(CoefficientFunction a) {
  return bl::BankLaineFunction::from_pair(ode::solution_pair(std::move(a), 0.0));
}

// 1
Outcome identity_suite() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> eta(0.2, 3.0), omega(-kPi, kPi), x(-10.0, 10.0), y(-1.5, 1.5);
  std::vector<bl::BankLaineFunction> fs = {bl::BankLaineFunction::trig(0.5, 0.0, 0.5 * kPi, 1)};
  while (fs.size() < 21) {
    const double e = eta(rng), w1 = omega(rng), w2 = omega(rng);
    if (std::sin(w1 - w2) == 0.0) continue;
    fs.push_back(bl::BankLaineFunction::trig(e, w1, w2, fs.size() % 2 ? 1 : -1));
  }
  double worst = 0.0;
  int points = 0;
  for (const auto& f : fs) {
    const double a = f.trig_params().eta * f.trig_params().eta;
    int used = 0;
    while (used < 100) {
      const Complex z(x(rng), y(rng));
      const bl::Jet3 j = bl::jet_at(f, z);
      if (std::abs(j.e0) < 1e-3) continue;
      worst = std::max(worst, std::abs(bl::bl_residual(j, a)));
      ++used;
    }
    points += used;
  }
  return {worst <= 1e-10, fmt("max |residual| = %.3e (<= 1e-10) over %d points, sin z + 20 random trig sets", worst, points)};
}

// 2
Outcome zero_property() {
  std::string detail;
  bool ok = true;
  for (const auto& [label, spec] : {std::pair{"A=1/4", "const:0.25"}, std::pair{"A=z", "poly:0,1"}}) {
    const auto e = harness::make_function(harness::parse_coefficient_spec(spec));
    const auto c = harness::real_census(e, -30.0, 30.0);
    bl::JetStream stream(e);
    double worst = 0.0;
    for (double z : c.zeros) worst = std::max(worst, std::abs(std::abs(stream.at(z).e1) - 1.0));
    const bool alt = census::sign_alternation_check(c).ok;
    ok = ok && !c.zeros.empty() && worst <= 1e-7 && alt;
    detail += fmt("%s: %zu zeros, max ||E'|-1| = %.2e, alternate=%s; ", label, c.zeros.size(), worst, alt ? "yes" : "no");
  }
  return {ok, detail + "tol 1e-7"};
}

// 3
Outcome lambda_airy() {
  const auto e = pair_function(CoefficientFunction::polynomial({0.0, 1.0}));
  const auto c = harness::real_census(e, -60.0, 60.0);
  const auto est = census::convergence_exponent(c, 10.0, 60.0);
  return {std::abs(est.lambda_fit - 1.5) <= 0.1,
          fmt("lambda_fit = %.4f (1.5 +- 0.1), lambda_series = %.4f, %zu zeros in window", est.lambda_fit,
              est.lambda_series, est.zeros_in_window)};
}

// 4
Outcome anchors() {
  const Complex i(0.0, 1.0);
  const double e1 = std::abs(qc::moebius_T(i) + 1.0);
  const double e2 = std::abs(qc::moebius_T(0.0) - polar_unit(0.25 * kPi));
  const double e3 = std::abs(qc::moebius_T(polar_unit(0.75 * kPi)));
  const double e4 = std::abs(qc::h_boundary(1.0) - kPi);
  // second-order one-sided differences
  const double d = 1e-4;
  const double h0 = qc::h_boundary(0.0);
  const double right = (-3.0 * h0 + 4.0 * qc::h_boundary(d) - qc::h_boundary(2.0 * d)) / (2.0 * d);
  const double left = (3.0 * h0 - 4.0 * qc::h_boundary(-d) + qc::h_boundary(-2.0 * d)) / (2.0 * d);
  const double machine = 8.0 * std::numeric_limits<double>::epsilon();
  const bool ok = e1 <= machine && e2 <= machine && e3 <= machine && e4 <= machine &&
                  std::abs(right - kSqrt2) <= 1e-8 && std::abs(left - kSqrt2) <= 1e-8;
  return {ok, fmt("|T(i)+1|=%.1e |T(0)-w|=%.1e |T(e^{3pi i/4})|=%.1e |h(1)-pi|=%.1e (<= %.1e); h'(0-)-sqrt2=%.1e "
                  "h'(0+)-sqrt2=%.1e (<= 1e-8)",
                  e1, e2, e3, e4, machine, left - kSqrt2, right - kSqrt2)};
}

// 5
Outcome glue() {
  const qc::QuasiregularMapY y;  // includes the gamma2 setup
  const double e = std::abs(qc::H_map(0.5 * kPi) - Complex(0.0, kPi));
  const auto seams = qc::seam_continuity(1000);
  return {e <= 1e-6 && seams.f1_seam <= 1e-6 && seams.f2_seam <= 1e-6,
          fmt("|H(pi/2)-i pi| = %.1e (<= 1e-6); seam jumps f1 %.1e, f2 %.1e over 1000 points each (<= 1e-6)", e,
              seams.f1_seam, seams.f2_seam)};
}

// 6
Outcome cubic_law() {
  const auto c = qc::zero_pole_census_Y(400.0);
  const double slope = qc::census_slope_Y(c, 10.0, 200.0);
  bool ok = std::abs(slope - 3.0) <= 0.1;
  std::string ratios;
  for (double r : {20.0, 40.0, 80.0}) {
    const double q = static_cast<double>(c.n_Y(2.0 * r)) / static_cast<double>(c.n_Y(r));
    ok = ok && q >= 6.8 && q <= 9.2;
    ratios += fmt(" %.3f", q);
  }
  return {ok, fmt("slope = %.4f (3 +- 0.1); n_Y(2r)/n_Y(r) at r=20,40,80:", slope) + ratios + " (in [6.8, 9.2])"};
}

// 7
Outcome quasiconformality() {
  const auto rep = qc::quasiconformality_check();
  bool ok = rep.k_max < 1.0 && rep.spread <= 0.1;
  std::string levels;
  for (const auto& l : rep.levels) levels += fmt(" n=%d:%.4f", l.n, l.k_max);
  // meromorphic region, finite-difference sampler
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(0.02, 3.0);
  int taken = 0, unreliable = 0, uncertain = 0, attempts = 0;
  double worst = 0.0, worst_error = 0.0;
  while (taken < 500 && attempts < 20000) {
    ++attempts;
    const Complex z(d(rng), d(rng));
    if (qc::in_E3(qc::eta_map(z))) continue;
    try {
      const auto s = qc::dilatation_sample_Y(z);
      // a sample only speaks to 1e-8 if its own error estimate is below that
      if (s.error > 1e-9) {
        ++uncertain;
        continue;
      }
      worst = std::max(worst, std::abs(s.mu));
      worst_error = std::max(worst_error, s.error);
      ++taken;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnreliableSample) throw;
      ++unreliable;
    }
  }
  ok = ok && taken == 500 && worst <= 1e-8;
  return {ok, fmt("k_max levels%s, spread %.2f%% (<= 10%%); finite-difference |mu| on the meromorphic region max "
                  "%.1e (<= 1e-8) at %d samples with error estimate <= %.1e (skipped: %d unresolvable, %d with "
                  "estimate > 1e-9)",
                  levels.c_str(), 100.0 * rep.spread, worst, taken, worst_error, unreliable, uncertain)};
}

// 8
Outcome integrability() {
  const auto rep = qc::integrability_check(128.0);
  const auto& a = rep.levels.back().annulus;
  const bool ok = rep.annuli_decay && rep.relative_change < 0.05;
  return {ok, fmt("annuli j=3..6: %.2e %.2e %.2e %.2e (decreasing: %s); total %.5f, change %.2f%% (< 5%%)", a[3], a[4],
                  a[5], a[6], rep.annuli_decay ? "yes" : "no", rep.value, 100.0 * rep.relative_change)};
}

// 9
Outcome growth() {
  const auto fit = qc::fit_gamma_growth(4, 20);
  double worst_ratio = 0.0;
  for (const auto& p : fit.points) worst_ratio = std::max(worst_ratio, p.max_loglog / (fit.C * p.n));
  return {fit.relative_rms < 0.2, fmt("C = %.4f, relative residual %.2f%% (< 20%%), max value/(C n) = %.3f", fit.C,
                                      100.0 * fit.relative_rms, worst_ratio)};
}

// 10
Outcome schwarzian() {
  std::string detail;
  bool ok = true;
  struct Case {
    const char* label;
    CoefficientFunction a;
    double tol;
  };
  const std::vector<Case> cases = {{"A=1", CoefficientFunction::constant(1.0), 1e-6},
                                   {"A=1/4", CoefficientFunction::constant(0.25), 1e-6},
                                   {"A=z", CoefficientFunction::polynomial({0.0, 1.0}), 1e-5}};
  for (const auto& c : cases) {
    const auto e = pair_function(c.a);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(-3.0, 3.0), y(-1.5, 1.5);
    double worst = 0.0;
    int taken = 0, skipped = 0;
    while (taken < 20) {
      const Complex z(x(rng), y(rng));
      // U' = 1/f1^2 is singular at zeros of f1
      if (std::abs(e.pair().evaluate(z).f1) < 0.2) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, std::abs(bl::schwarzian(bl::quotient_derivatives(e, z)) - 2.0 * c.a(z)));
      ++taken;
    }
    ok = ok && worst <= c.tol;
    detail += fmt("%s: %.1e (<= %.0e, %d near-pole draws skipped); ", c.label, worst, c.tol, skipped);
  }
  return {ok, detail + "20 points each"};
}

// 11
Outcome calibration() {
  bool ok = true;
  std::string detail;
  // the windows of criteria 3 and 6
  for (const auto [r_min, r_max] : {std::pair{10.0, 60.0}, std::pair{10.0, 200.0}}) {
    detail += fmt("window (%g,%g):", r_min, r_max);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const auto est = census::convergence_exponent(harness::planted_census(p, r_max), r_min, r_max);
      const double rel = std::abs(est.lambda_fit - p) / p;
      ok = ok && rel <= 0.05;
      detail += fmt(" p=%.1f->%.4f (%.2f%%)", p, est.lambda_fit, 100.0 * rel);
    }
    detail += "; ";
  }
  return {ok, detail + "tol 5%"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Bank-Laine identity suite", 5.0, identity_suite},
      {2, "zero property and alternation", 30.0, zero_property},
      {3, "exponent of convergence for A=z", 120.0, lambda_airy},
      {4, "Moebius and boundary anchors", 1.0, anchors},
      {5, "glue consistency", 60.0, glue},
      {6, "cubic zero law", 10.0, cubic_law},
      {7, "quasiconformality", 300.0, quasiconformality},
      {8, "dilatation integrability", 300.0, integrability},
      {9, "growth law on Gamma_n", 120.0, growth},
      {10, "Schwarzian link", 30.0, schwarzian},
      {11, "estimator calibration", 10.0, calibration},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %2d  %s: %s [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
