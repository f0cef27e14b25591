#include "banklaine/zero_census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace banklaine::census {

namespace {

constexpr double kMergeDistance = 1e-8;

struct Sample {
  double x;
  double f;
  double df;
};

class Scanner {
 public:
  explicit Scanner(const RealFunction& f) : f_(f) {}

  Sample eval(double x) {
    const ValueSlope vs = f_(x);
    check_real(x, vs.value);
    check_real(x, vs.slope);
    return {x, vs.value.real(), vs.slope.real()};
  }

  void cell(const Sample& lo, const Sample& hi, int depth) {
    if (hi.f == 0.0) {
      found_.push_back(hi);
      return;
    }
    const double s_lo = lo.f != 0.0 ? lo.f : lo.df;
    if ((s_lo < 0.0) != (hi.f < 0.0)) {
      found_.push_back(refine(lo, hi));
      return;
    }
    // Same sign at both ends: a close pair can hide where f' turns and |f| is small.
    const double width = hi.x - lo.x;
    const double slope = std::max(std::abs(lo.df), std::abs(hi.df));
    if (depth < 40 && lo.df * hi.df < 0.0 &&
        std::min(std::abs(lo.f), std::abs(hi.f)) <= 0.5 * slope * width) {
      const Sample mid = eval(0.5 * (lo.x + hi.x));
      cell(lo, mid, depth + 1);
      cell(mid, hi, depth + 1);
    }
  }

  void record(const Sample& s) { found_.push_back(s); }
  [[nodiscard]] std::vector<Sample>& found() { return found_; }

 private:
  void check_real(double x, Complex v) const {
    if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real()))) {
      std::ostringstream os;
      os.precision(17);
      os << "function is not real at x=" << x << " (imaginary part " << v.imag() << ")";
      throw Error(ErrorCode::kRealityViolation, os.str());
    }
  }

  Sample refine(Sample lo, Sample hi) {
    // lo may sit on a known zero; its slope then gives the sign just to the right
    const bool lo_negative = (lo.f != 0.0 ? lo.f : lo.df) < 0.0;
    Sample cur = (lo.f != 0.0 && std::abs(lo.f) < std::abs(hi.f)) ? lo : hi;
    double prev_width = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
      const double width = hi.x - lo.x;
      if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.x))) {
        break;
      }
      double next = (cur.df != 0.0) ? cur.x - cur.f / cur.df : std::numeric_limits<double>::quiet_NaN();
      if (!(next > lo.x && next < hi.x) || width > 0.5 * prev_width) {
        next = 0.5 * (lo.x + hi.x);
      }
      prev_width = width;
      cur = eval(next);
      if (cur.f == 0.0) break;
      if ((cur.f < 0.0) == lo_negative) {
        lo = cur;
      } else {
        hi = cur;
      }
      if (std::abs(cur.f) <= 1e-15 * std::max(1.0, std::abs(cur.df) * std::max(1.0, std::abs(cur.x)))) {
        break;
      }
    }
    return cur;
  }

  const RealFunction& f_;
  std::vector<Sample> found_;
};

[[nodiscard]] double scan_radius(double a, double b) {
  if (a < 0.0 && b > 0.0) return std::min(std::abs(a), std::abs(b));
  return std::max(std::abs(a), std::abs(b));
}

// Gauss-Kronrod 7-15 on [0, 1] of g(s).
struct GkResult {
  Complex value;
  double error;
};

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

class BoundaryIntegrator {
 public:
  BoundaryIntegrator(const PlaneFunction& f, double diag) : f_(f), diag_(diag) {}

  // Integral of f'/f along the segment a -> b.
  Complex edge(Complex a, Complex b) { return adapt(a, b, 0); }
  [[nodiscard]] bool too_close() const { return too_close_; }
  [[nodiscard]] bool failed() const { return failed_; }

 private:
  Complex logderiv(Complex z) {
    const ValueSlope vs = f_(z);
    if (!is_finite(vs.value) || !is_finite(vs.slope)) {
      failed_ = true;
      return {};
    }
    if (std::abs(vs.value) <= 1e-9 * diag_ * std::abs(vs.slope) || vs.value == Complex{}) {
      too_close_ = true;
      return {};
    }
    return vs.slope / vs.value;
  }

  GkResult rule(Complex a, Complex b) {
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const Complex center = logderiv(mid);
    Complex kron = kWgk[7] * center;
    Complex gauss = kWg[3] * center;
    for (int j = 0; j < 7; ++j) {
      const Complex lo = logderiv(mid - kXgk[j] * half);
      const Complex hi = logderiv(mid + kXgk[j] * half);
      kron += kWgk[j] * (lo + hi);
      if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    return {kron * half, std::abs((kron - gauss) * half)};
  }

  Complex adapt(Complex a, Complex b, int depth) {
    const GkResult r = rule(a, b);
    if (too_close_ || failed_) return r.value;
    if (r.error <= 1e-8 || depth >= 40) {
      if (r.error > 1e-3) failed_ = true;
      return r.value;
    }
    const Complex mid = 0.5 * (a + b);
    return adapt(a, mid, depth + 1) + adapt(mid, b, depth + 1);
  }

  const PlaneFunction& f_;
  double diag_;
  bool too_close_ = false;
  bool failed_ = false;
};

}  // namespace

ZeroCensus census_from_zeros(std::vector<double> zeros, double radius_max, std::vector<int> signs) {
  if (!signs.empty() && signs.size() != zeros.size()) {
    throw Error(ErrorCode::kInvalidInput, "signs and zeros differ in length");
  }
  if (signs.empty()) signs.assign(zeros.size(), 1);
  std::vector<std::size_t> order(zeros.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return zeros[i] < zeros[j]; });
  ZeroCensus c;
  c.radius_max = radius_max;
  for (auto i : order) {
    if (!c.zeros.empty() && zeros[i] - c.zeros.back() < kMergeDistance) continue;
    c.zeros.push_back(zeros[i]);
    c.signs.push_back(signs[i]);
    c.abs_value.push_back(0.0);
    c.abs_slope_minus_sign.push_back(0.0);
  }
  return c;
}

ZeroCensus real_zeros_scan(const RealFunction& f, double a, double b, double initial_step) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidInput, "scan interval must satisfy a < b");
  }
  if (!(initial_step > 0.0)) throw Error(ErrorCode::kInvalidInput, "scan step must be positive");

  Scanner scanner(f);
  Sample lo = scanner.eval(a);
  if (lo.f == 0.0) scanner.record(lo);
  const auto cells = static_cast<long>(std::ceil((b - a) / initial_step));
  for (long i = 1; i <= cells; ++i) {
    const double x = (i == cells) ? b : a + static_cast<double>(i) * initial_step;
    const Sample hi = scanner.eval(x);
    scanner.cell(lo, hi, 0);
    lo = hi;
  }

  auto& found = scanner.found();
  std::sort(found.begin(), found.end(), [](const Sample& p, const Sample& q) { return p.x < q.x; });
  ZeroCensus c;
  c.radius_max = scan_radius(a, b);
  for (const auto& s : found) {
    if (!c.zeros.empty() && s.x - c.zeros.back() < kMergeDistance) {
      if (std::abs(s.f) < c.abs_value.back()) {
        c.zeros.back() = s.x;
        c.abs_value.back() = std::abs(s.f);
        c.signs.back() = s.df >= 0.0 ? 1 : -1;
        c.abs_slope_minus_sign.back() = std::abs(s.df - c.signs.back());
      }
      continue;
    }
    const int sign = s.df >= 0.0 ? 1 : -1;
    c.zeros.push_back(s.x);
    c.signs.push_back(sign);
    c.abs_value.push_back(std::abs(s.f));
    c.abs_slope_minus_sign.push_back(std::abs(s.df - sign));
  }
  return c;
}

int count_zeros_region(const PlaneFunction& f, const Rectangle& rect) {
  if (!(rect.x_min < rect.x_max) || !(rect.y_min < rect.y_max)) {
    throw Error(ErrorCode::kInvalidInput, "rectangle must have positive width and height");
  }
  const double diag = std::hypot(rect.x_max - rect.x_min, rect.y_max - rect.y_min);
  double last_distance = 0.0;
  for (int attempt = 0; attempt <= 5; ++attempt) {
    const double grow = 1e-3 * diag * attempt;
    const Complex c00(rect.x_min - grow, rect.y_min - grow);
    const Complex c10(rect.x_max + grow, rect.y_min - grow);
    const Complex c11(rect.x_max + grow, rect.y_max + grow);
    const Complex c01(rect.x_min - grow, rect.y_max + grow);
    BoundaryIntegrator integ(f, diag);
    Complex total = integ.edge(c00, c10);
    if (!integ.too_close() && !integ.failed()) total += integ.edge(c10, c11);
    if (!integ.too_close() && !integ.failed()) total += integ.edge(c11, c01);
    if (!integ.too_close() && !integ.failed()) total += integ.edge(c01, c00);
    if (integ.too_close() || integ.failed()) continue;
    const Complex winding = total / Complex(0.0, 2.0 * kPi);
    const double n = std::round(winding.real());
    last_distance = std::abs(winding - n);
    if (last_distance < 0.05 && n >= 0.0) return static_cast<int>(n);
  }
  std::ostringstream os;
  os << "argument-principle quadrature did not settle (distance to integer " << last_distance
     << "); perturb the rectangle by about " << 1e-3 * diag;
  throw Error(ErrorCode::kBoundaryTooClose, os.str());
}

int count_zeros_region(const ComplexFunction& f, const ComplexFunction& df, const Rectangle& rect) {
  return count_zeros_region([&](Complex z) { return ValueSlope{f(z), df(z)}; }, rect);
}

std::size_t counting_function(const ZeroCensus& census, double r) {
  if (r > census.radius_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "r=" << r << " exceeds the scanned radius " << census.radius_max;
    throw Error(ErrorCode::kInsufficientScan, os.str());
  }
  if (r < 0.0) return 0;
  const auto lo = std::lower_bound(census.zeros.begin(), census.zeros.end(), -r);
  const auto hi = std::upper_bound(census.zeros.begin(), census.zeros.end(), r);
  return static_cast<std::size_t>(hi - lo);
}

double fit_slope(std::span<const double> x, std::span<const double> y, double* rms_residual) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "slope fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::kInsufficientData, "slope fit needs distinct abscissae");
  const double slope = sxy / sxx;
  if (rms_residual) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (my + slope * (x[i] - mx));
      ss += e * e;
    }
    *rms_residual = std::sqrt(ss / n);
  }
  return slope;
}

ExponentEstimate convergence_exponent(const ZeroCensus& census, double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_min < r_max)) {
    throw Error(ErrorCode::kInvalidInput, "window must satisfy 0 < r_min < r_max");
  }
  if (r_max > census.radius_max * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "window end " << r_max << " exceeds the scanned radius " << census.radius_max;
    throw Error(ErrorCode::kInsufficientScan, os.str());
  }
  ExponentEstimate est;
  est.r_min = r_min;
  est.r_max = r_max;
  for (double x : census.zeros) {
    const double ax = std::abs(x);
    if (ax >= r_min && ax <= r_max) ++est.zeros_in_window;
  }
  if (est.zeros_in_window < 20) {
    std::ostringstream os;
    os << "only " << est.zeros_in_window << " zeros in window [" << r_min << ", " << r_max
       << "], need 20";
    throw Error(ErrorCode::kInsufficientData, os.str());
  }

  const double decades = std::log10(r_max / r_min);
  const int m = std::max(2, static_cast<int>(std::lround(40.0 * decades)));
  std::vector<double> lx;
  std::vector<double> ly;
  for (int i = 0; i <= m; ++i) {
    const double r = (i == m) ? r_max : r_min * std::pow(r_max / r_min, static_cast<double>(i) / m);
    const auto n = counting_function(census, r);
    if (n == 0) continue;
    lx.push_back(std::log(r));
    ly.push_back(std::log(static_cast<double>(n)));
  }
  if (lx.size() < 3) throw Error(ErrorCode::kInsufficientData, "counting function is empty in window");
  est.lambda_fit = std::max(0.0, fit_slope(lx, ly, &est.residual));

  const double r_mid = std::sqrt(r_min * r_max);
  std::vector<double> t_lower;
  std::vector<double> t_upper;
  for (double x : census.zeros) {
    const double ax = std::abs(x);
    if (ax < r_min || ax > r_max) continue;
    (ax < r_mid ? t_lower : t_upper).push_back(std::log(ax / r_mid));
  }
  // log of the upper half-window sum minus the lower one, and its s-derivative
  auto balance = [&](double s) {
    auto half = [s](const std::vector<double>& ts) {
      double sum = 0.0;
      double moment = 0.0;
      for (double t : ts) {
        const double w = std::exp(-s * t);
        sum += w;
        moment += t * w;
      }
      return std::pair{std::log(sum), -moment / sum};
    };
    const auto [lu, du] = half(t_upper);
    const auto [ll, dl] = half(t_lower);
    return std::pair{lu - ll, du - dl};
  };
  double lo = 0.0;
  double hi = 50.0;
  if (t_upper.empty() || t_lower.empty() || balance(lo).first <= 0.0) {
    est.lambda_series = 0.0;
  } else if (balance(hi).first >= 0.0) {
    est.lambda_series = hi;
  } else {
    // safeguarded Newton; the balance decreases in s
    double s = 0.5 * (lo + hi);
    for (int i = 0; i < 100; ++i) {
      const auto [b, db] = balance(s);
      (b > 0.0 ? lo : hi) = s;
      double next = db < 0.0 ? s - b / db : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - s) <= 1e-12 * std::max(1.0, s) || hi - lo <= 1e-12;
      s = next;
      if (done) break;
    }
    est.lambda_series = s;
  }
  return est;
}

AlternationResult sign_alternation_check(const ZeroCensus& census) {
  for (std::size_t i = 1; i < census.signs.size(); ++i) {
    if (census.signs[i] == census.signs[i - 1]) return {false, static_cast<std::ptrdiff_t>(i)};
  }
  return {true, -1};
}

OrderEstimate estimate_order(const ComplexFunction& f, std::span<const double> radii) {
  if (radii.size() < 5) throw Error(ErrorCode::kInvalidInput, "order estimate needs at least 5 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorCode::kInvalidInput, "radii must be positive and increasing");
    }
  }
  OrderEstimate est;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double r : radii) {
    double m = 0.0;
    for (int j = 0; j < 256; ++j) m = std::max(m, std::abs(f(r * polar_unit(2.0 * kPi * j / 256.0))));
    if (!std::isfinite(m)) {
      est.truncated = true;
      break;
    }
    if (m <= 1.0) continue;
    const double lm = std::log(m);
    if (lx.empty()) est.r_first = r;
    est.r_last = r;
    lx.push_back(std::log(r));
    ly.push_back(std::log(lm));
  }
  est.usable = lx.size();
  if (lx.size() < 2) {
    throw Error(ErrorCode::kInsufficientData, "fewer than two radii with finite max modulus above 1");
  }
  est.order = fit_slope(lx, ly);
  return est;
}

void write_census_csv(std::ostream& os, const ZeroCensus& census, const std::string& kind,
                      bool header) {
  const auto old = os.precision(17);
  if (header) {
    os << "x,sign,abs_E,abs_Eprime_minus_sign";
    if (!kind.empty()) os << ",kind";
    os << "\n";
  }
  for (std::size_t i = 0; i < census.zeros.size(); ++i) {
    os << census.zeros[i] << "," << census.signs[i] << "," << census.abs_value[i] << ","
       << census.abs_slope_minus_sign[i];
    if (!kind.empty()) os << "," << kind;
    os << "\n";
  }
  os.precision(old);
}

}  // namespace banklaine::census
