#include "banklaine/sweeps.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "banklaine/qc_map_y.hpp"

namespace banklaine::sweeps {

namespace {

int g_thread_cap = 0;

[[nodiscard]] int team_size() { return g_thread_cap > 0 ? g_thread_cap : omp_get_max_threads(); }

// Runs fn(i) for i in [0, n). Exceptions are captured per row and the first
// one in row order is rethrown, so both paths fail identically.
template <class Fn>
void for_rows(int n, Execution exec, Fn&& fn) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(n, 0)));
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(team_size())
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct SupRow {
  double k_max = 0.0;
  std::size_t samples = 0;
  std::size_t unresolved = 0;
};

struct IntegrabilityRow {
  double total = 0.0;
  std::vector<double> annulus;
  std::size_t cells = 0;
  std::size_t subsampled = 0;
  std::size_t homogenized = 0;
};

constexpr double kSubcellSpin = 0.5;
constexpr double kHomogenizeSpin = 12.0;

}  // namespace

void set_thread_cap(int n) { g_thread_cap = std::max(n, 0); }

int thread_cap() { return g_thread_cap; }

SupSweep dilatation_sup(int n, Execution exec) {
  if (n < 2) throw Error(ErrorCode::kInvalidInput, "sweep needs n >= 2");
  std::vector<SupRow> rows(static_cast<std::size_t>(n));
  for_rows(n, exec, [&](int i) {
    SupRow& row = rows[static_cast<std::size_t>(i)];
    const double s = -2.0 * kPi + 4.0 * kPi * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double t = -12.0 + 24.0 * j / (n - 1);
      const Complex u(s, t);
      if (qc::region_of(u) == qc::RegionTag::kOutsideE0) continue;
      ++row.samples;
      const double m = qc::mu_V_abs(u);
      if (std::isnan(m)) {
        ++row.unresolved;
        continue;
      }
      row.k_max = std::max(row.k_max, m);
    }
  });
  SupSweep out;
  out.n = n;
  for (const auto& row : rows) {
    out.k_max = std::max(out.k_max, row.k_max);
    out.samples += row.samples;
    out.unresolved += row.unresolved;
  }
  return out;
}

IntegrabilityGrid integrability_grid(int ns, int nw, double r_max, Execution exec,
                                     RegionFilter filter) {
  if (ns < 2 || nw < 2 || ns % 2 || nw % 2) {
    throw Error(ErrorCode::kInvalidInput, "integrability grid sizes must be even and >= 2");
  }
  if (!(r_max > 1.0)) throw Error(ErrorCode::kInvalidInput, "integrability radius must exceed 1");
  const int bins = static_cast<int>(std::floor(std::log2(r_max))) + 1;
  double u_max = 0.0;
  for (int k = 0; k <= 64; ++k) {
    u_max = std::max(u_max, std::abs(qc::eta_map(std::polar(r_max, 0.5 * kPi * k / 64.0))));
  }
  const double w_max = std::log1p(u_max) + 0.5;
  const double ds = 4.0 * kPi / ns;
  const double dw = 2.0 * w_max / nw;

  std::vector<IntegrabilityRow> rows(static_cast<std::size_t>(ns));
  for_rows(ns, exec, [&](int i) {
    IntegrabilityRow& row = rows[static_cast<std::size_t>(i)];
    row.annulus.assign(static_cast<std::size_t>(bins), 0.0);
    // Adds the midpoint contribution of one (sub)cell.
    auto add = [&](double s, double w, double cell_ds, double cell_dw, bool homogenize) {
      const double t = std::copysign(std::expm1(std::abs(w)), w);
      const Complex u(s, t);
      if (qc::region_of(u) == qc::RegionTag::kOutsideE0) return;
      const Complex z = qc::eta_inverse(u);
      const double r = std::abs(z);
      if (r < 1.0 || r > r_max) return;
      double mu = homogenize ? qc::mu_V_abs_homogenized(u) : qc::mu_V_abs(u);
      if (std::isnan(mu)) mu = qc::mu_V_abs_homogenized(u);
      if (std::isnan(mu) || mu == 0.0) return;
      const double dt = std::exp(std::abs(w)) * cell_dw;
      const Complex ep = qc::eta_prime(z);
      const double weight = cell_ds * dt / (r * r * std::norm(ep));
      const double c = 4.0 * mu * weight;
      row.total += c;
      const int j = std::clamp(static_cast<int>(std::floor(std::log2(r))), 0, bins - 1);
      row.annulus[static_cast<std::size_t>(j)] += c;
    };

    const double s = -2.0 * kPi + (i + 0.5) * ds;
    for (int k = 0; k < nw; ++k) {
      const double w = -w_max + (k + 0.5) * dw;
      const double t = std::copysign(std::expm1(std::abs(w)), w);
      const Complex u(s, t);
      if (qc::region_of(u) == qc::RegionTag::kOutsideE0) continue;
      const bool e3 = qc::in_E3(u);
      if (filter == RegionFilter::kMeromorphicOnly) {
        if (e3) continue;
        ++row.cells;
        add(s, w, ds, dw, false);
        continue;
      }
      if (!e3) continue;
      ++row.cells;
      const double dt = std::exp(std::abs(w)) * dw;
      const double spin = qc::log_F_speed(u) * std::hypot(ds, dt);
      if (!(spin <= kHomogenizeSpin)) {
        ++row.homogenized;
        add(s, w, ds, dw, true);
      } else if (spin > kSubcellSpin) {
        ++row.subsampled;
        const int m = static_cast<int>(std::ceil(spin / kSubcellSpin));
        for (int a = 0; a < m; ++a) {
          for (int b = 0; b < m; ++b) {
            add(s - 0.5 * ds + (a + 0.5) * ds / m, w - 0.5 * dw + (b + 0.5) * dw / m, ds / m, dw / m,
                false);
          }
        }
      } else {
        add(s, w, ds, dw, false);
      }
    }
  });

  IntegrabilityGrid out;
  out.ns = ns;
  out.nw = nw;
  out.r_max = r_max;
  out.annulus.assign(static_cast<std::size_t>(bins), 0.0);
  for (const auto& row : rows) {
    out.total += row.total;
    for (int j = 0; j < bins; ++j) out.annulus[static_cast<std::size_t>(j)] += row.annulus[static_cast<std::size_t>(j)];
    out.cells += row.cells;
    out.subsampled_cells += row.subsampled;
    out.homogenized_cells += row.homogenized;
  }
  return out;
}

std::vector<double> bl_residuals(const bl::BankLaineFunction& e, std::span<const Complex> points,
                                 Execution exec) {
  std::vector<double> out(points.size());
  for_rows(static_cast<int>(points.size()), exec, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const bl::Jet3 jet = bl::jet_at(e, points[k]);
    if (jet.e0 == Complex{}) {
      out[k] = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    out[k] = std::abs(bl::bl_residual(jet, e.coefficient_at(points[k])));
  });
  return out;
}

GammaSamples gamma_n_samples(int n, int per_quadrant, Execution exec) {
  if (n < 1 || per_quadrant < 2) throw Error(ErrorCode::kInvalidInput, "Gamma_n needs n >= 1 and 2 samples");
  struct Row {
    double v[4];
    bool skip[4];
  };
  std::vector<Row> rows(static_cast<std::size_t>(per_quadrant));
  for_rows(per_quadrant, exec, [&](int j) {
    Row& row = rows[static_cast<std::size_t>(j)];
    const double phi = 1.5 * kPi * j / (per_quadrant - 1);
    const Complex u = n * kPi * polar_unit(phi);
    const Complex q = qc::eta_inverse(u);
    const Complex images[4] = {q, {-q.real(), q.imag()}, {-q.real(), -q.imag()}, {q.real(), -q.imag()}};
    for (int r = 0; r < 4; ++r) {
      const qc::Extended y = qc::pullback_Y(images[r]);
      row.skip[r] = y.is_infinite();
      const double l = y.log_abs > 0.0 ? std::log(y.log_abs) : 0.0;
      row.v[r] = std::max(0.0, l);
    }
  });
  GammaSamples out;
  for (const auto& row : rows) {
    for (int r = 0; r < 4; ++r) {
      if (row.skip[r]) {
        ++out.skipped;
      } else {
        out.values.push_back(row.v[r]);
      }
    }
  }
  return out;
}

}  // namespace banklaine::sweeps
