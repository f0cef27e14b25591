#include "banklaine/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include "banklaine/qc_analysis.hpp"
#include "banklaine/qc_map_y.hpp"
#include "banklaine/report.hpp"
#include "banklaine/sweeps.hpp"

namespace banklaine::harness {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::kUsage, message); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& token, const std::string& spec) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    usage("bad number '" + token + "' in coefficient spec '" + spec + "'");
  }
  return v;
}

std::string spec_text(const RunConfig& c) { return c.coefficient_spec; }

// Window of the verify scan, default [-30, 30].
std::pair<double, double> verify_interval(const RunConfig& c) {
  return c.window.value_or(std::pair{-30.0, 30.0});
}

std::pair<double, double> lambda_window(const RunConfig& c) {
  const auto w = c.window.value_or(std::pair{10.0, 60.0});
  if (!(w.first > 0.0)) usage("lambda window needs r_min > 0");
  if (w.second / w.first < 2.0) usage("lambda window must span at least a factor 2");
  return w;
}

ordered_json window_json(std::pair<double, double> w) { return ordered_json::array({w.first, w.second}); }

void write_json(const std::filesystem::path& path, const ordered_json& j) {
  report::write_text_file(path, j.dump(2) + "\n");
}

// Plots never fail a run; failures are collected for the summary.
template <class Fn>
void try_plot(const std::filesystem::path& path, std::vector<std::string>& errors, Fn&& fn) {
  try {
    std::ostringstream os;
    fn(os);
    report::write_text_file(path, os.str());
  } catch (const std::exception& e) {
    errors.push_back(path.filename().string() + ": " + e.what());
  }
}

double max_abs_coefficient(const CoefficientFunction& a, double lo, double hi) {
  double m = 0.0;
  for (int k = 0; k <= 1000; ++k) m = std::max(m, std::abs(a(lo + (hi - lo) * k / 1000.0)));
  return m;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "verify") return Command::kVerify;
  if (name == "lambda") return Command::kLambda;
  if (name == "qc") return Command::kQc;
  if (name == "rays") return Command::kRays;
  usage("unknown command '" + name + "'");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::kVerify: return "verify";
    case Command::kLambda: return "lambda";
    case Command::kQc: return "qc";
    case Command::kRays: return "rays";
  }
  return "?";
}

void validate(const RunConfig& config) {
  if (config.tolerance && !(*config.tolerance > 0.0 && std::isfinite(*config.tolerance))) {
    usage("tolerance must be positive");
  }
  if (config.window) {
    const auto [lo, hi] = *config.window;
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) usage("window must satisfy RMIN < RMAX");
  }
  if (config.n_max < 6 || config.n_max > 60) usage("--nmax must lie in [6, 60]");
}

CoefficientSpec parse_coefficient_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) usage("coefficient spec '" + spec + "' has no tag");
  const std::string tag = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  CoefficientSpec out;
  out.text = spec;
  const auto tokens = split(body, ',');
  if (tag == "const") {
    if (tokens.size() != 1) usage("const takes one value, got '" + body + "'");
    out.kind = CoefficientSpec::Kind::kConstant;
    out.values = {parse_real(tokens[0], spec)};
  } else if (tag == "poly") {
    out.kind = CoefficientSpec::Kind::kPolynomial;
    for (const auto& t : tokens) out.values.push_back(parse_real(t, spec));
    if (out.values.size() > 1 && out.values.back() == 0.0) {
      usage("leading coefficient '" + tokens.back() + "' in '" + spec + "' is zero");
    }
  } else if (tag == "trig") {
    if (tokens.size() != 4) usage("trig takes eta,w1,w2,sign, got '" + body + "'");
    out.kind = CoefficientSpec::Kind::kTrig;
    int sign = 0;
    if (tokens[3] == "+" || tokens[3] == "+1" || tokens[3] == "1") sign = 1;
    if (tokens[3] == "-" || tokens[3] == "-1") sign = -1;
    if (sign == 0) usage("bad sign '" + tokens[3] + "' in coefficient spec '" + spec + "'");
    out.trig = {parse_real(tokens[0], spec), parse_real(tokens[1], spec), parse_real(tokens[2], spec), sign};
    if (!(out.trig.eta != 0.0 && std::sin(out.trig.omega1 - out.trig.omega2) != 0.0)) {
      usage("trig spec '" + spec + "' needs eta sin(w1 - w2) != 0");
    }
  } else if (tag == "zeros") {
    if (tokens.size() != 1) usage("zeros takes one token, got '" + body + "'");
    out.kind = CoefficientSpec::Kind::kPlanted;
    out.planted_exponent = tokens[0] == "cubic" ? 3.0 : parse_real(tokens[0], spec);
    if (!(out.planted_exponent > 0.0 && out.planted_exponent <= 4.0)) {
      usage("planted exponent '" + tokens[0] + "' must lie in (0, 4]");
    }
  } else {
    usage("unknown coefficient tag '" + tag + "'");
  }
  return out;
}

bl::BankLaineFunction make_function(const CoefficientSpec& spec) {
  switch (spec.kind) {
    case CoefficientSpec::Kind::kTrig:
      return bl::BankLaineFunction::trig(spec.trig.eta, spec.trig.omega1, spec.trig.omega2, spec.trig.sign);
    case CoefficientSpec::Kind::kConstant:
      return bl::BankLaineFunction::from_pair(ode::solution_pair(CoefficientFunction::constant(spec.values[0]), 0.0));
    case CoefficientSpec::Kind::kPolynomial: {
      std::vector<Complex> c(spec.values.begin(), spec.values.end());
      return bl::BankLaineFunction::from_pair(ode::solution_pair(CoefficientFunction::polynomial(std::move(c)), 0.0));
    }
    case CoefficientSpec::Kind::kPlanted: break;
  }
  usage("'" + spec.text + "' is a planted zero set, not a coefficient");
}

census::ZeroCensus planted_census(double exponent, double radius_max) {
  if (!(exponent > 0.0) || !(radius_max > 1.0)) throw Error(ErrorCode::kInvalidInput, "bad planted census");
  const auto count = static_cast<long>(std::floor(std::pow(radius_max, exponent)));
  if (count > 20'000'000) throw Error(ErrorCode::kInvalidInput, "planted census too large");
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(2 * count));
  for (long k = 1; k <= count; ++k) {
    const double x = std::pow(static_cast<double>(k), 1.0 / exponent);
    zeros.push_back(x);
    zeros.push_back(-x);
  }
  return census::census_from_zeros(std::move(zeros), radius_max);
}

census::ZeroCensus real_census(const bl::BankLaineFunction& e, double a, double b) {
  const double amax = e.is_trig() ? e.trig_params().eta * e.trig_params().eta
                                  : max_abs_coefficient(e.pair().coefficient, a, b);
  const double step = std::min(0.05, 0.05 / std::sqrt(std::max(amax, 1e-300)));
  bl::JetStream stream(e);
  const census::RealFunction f = [&](double x) {
    const bl::Jet3 j = e.is_trig() ? bl::jet_at(e, x) : stream.at(x);
    return census::ValueSlope{j.e0, j.e1};
  };
  return census::real_zeros_scan(f, a, b, step);
}

ordered_json cmd_verify(const RunConfig& config) {
  validate(config);
  const CoefficientSpec spec = parse_coefficient_spec(config.coefficient_spec);
  const bl::BankLaineFunction e = make_function(spec);
  const double tol = config.tolerance.value_or(1e-7);
  const auto [a, b] = verify_interval(config);

  // residual points: uniform in [a, b] x [-1, 1], away from zeros of E
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> ux(a, b);
  std::uniform_real_distribution<double> uy(-1.0, 1.0);
  std::vector<Complex> candidates;
  for (int k = 0; k < 400; ++k) {
    const double x = ux(rng);
    const double y = uy(rng);
    candidates.emplace_back(x, y);
  }
  const auto residuals = sweeps::bl_residuals(e, candidates, sweeps::Execution::kParallel);
  double max_residual = 0.0;
  int used = 0;
  for (std::size_t k = 0; k < candidates.size() && used < 100; ++k) {
    if (!std::isfinite(residuals[k])) continue;
    const bl::Jet3 j = bl::jet_at(e, candidates[k]);
    if (std::abs(j.e0) < 1e-3) continue;
    max_residual = std::max(max_residual, residuals[k]);
    ++used;
  }

  census::ZeroCensus c = real_census(e, a, b);
  bool property_ok = true;
  double worst = 0.0;
  bl::JetStream stream(e);
  for (std::size_t k = 0; k < c.zeros.size(); ++k) {
    const bl::Jet3 j = e.is_trig() ? bl::jet_at(e, c.zeros[k]) : stream.at(c.zeros[k]);
    try {
      const int s = bl::verify_zero_property(j, tol);
      worst = std::max(worst, std::abs(j.e1 - static_cast<double>(s)));
      if (std::abs(j.e1 - static_cast<double>(s)) > tol) property_ok = false;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kNotBankLaineZero && err.code() != ErrorCode::kInvalidInput) throw;
      property_ok = false;
      worst = std::max(worst, std::abs(std::abs(j.e1) - 1.0));
    }
  }
  const auto alt = census::sign_alternation_check(c);

  std::ostringstream csv;
  census::write_census_csv(csv, c);
  report::write_text_file(config.output_dir / "verify_census.csv", csv.str());

  ordered_json j;
  j["command"] = "verify";
  j["coefficient"] = spec_text(config);
  j["seed"] = config.seed;
  j["interval"] = window_json({a, b});
  j["tolerance"] = tol;
  j["residual_points"] = used;
  j["max_residual"] = max_residual;
  j["zero_count"] = c.zeros.size();
  j["max_abs_eprime_minus_sign"] = worst;
  j["zero_property_ok"] = property_ok;
  j["alternation_ok"] = alt.ok;
  j["first_violation"] = alt.first_violation;
  j["all_signs_ok"] = property_ok && alt.ok;
  if (spec.kind == CoefficientSpec::Kind::kConstant && spec.values[0] > 0.0) {
    // E = sin(2 k z) / (2 k), k = sqrt(c)
    const double k = std::sqrt(spec.values[0]);
    double err = 0.0;
    for (std::size_t i = 0; i < candidates.size(); i += 4) {
      const Complex z = candidates[i];
      err = std::max(err, std::abs(bl::jet_at(e, z).e0 - std::sin(2.0 * k * z) / (2.0 * k)));
    }
    j["closed_form"] = "sin(2 sqrt(c) z) / (2 sqrt(c))";
    j["closed_form_max_error"] = err;
  }
  return j;
}

ordered_json cmd_lambda(const RunConfig& config) {
  validate(config);
  const CoefficientSpec spec = parse_coefficient_spec(config.coefficient_spec);
  const auto [r_min, r_max] = lambda_window(config);
  census::ZeroCensus c;
  std::optional<double> predicted;
  if (spec.kind == CoefficientSpec::Kind::kPlanted) {
    c = planted_census(spec.planted_exponent, r_max);
    predicted = spec.planted_exponent;
  } else {
    const bl::BankLaineFunction e = make_function(spec);
    c = real_census(e, -r_max, r_max);
    if (spec.kind == CoefficientSpec::Kind::kTrig || spec.kind == CoefficientSpec::Kind::kConstant) {
      predicted = 1.0;
    } else {
      predicted = (static_cast<double>(spec.values.size() - 1) + 2.0) / 2.0;
    }
  }
  std::ostringstream csv;
  census::write_census_csv(csv, c);
  report::write_text_file(config.output_dir / "lambda_census.csv", csv.str());

  const census::ExponentEstimate est = census::convergence_exponent(c, r_min, r_max);
  ordered_json estimate;
  estimate["lambda_fit"] = est.lambda_fit;
  estimate["lambda_series"] = est.lambda_series;
  estimate["window"] = window_json({est.r_min, est.r_max});
  estimate["residual"] = est.residual;
  write_json(config.output_dir / "lambda_estimate.json", estimate);

  ordered_json j;
  j["command"] = "lambda";
  j["coefficient"] = spec_text(config);
  j["window"] = window_json({r_min, r_max});
  j["zeros_in_window"] = est.zeros_in_window;
  j["lambda_fit"] = est.lambda_fit;
  j["lambda_series"] = est.lambda_series;
  j["residual"] = est.residual;
  if (predicted) {
    j["predicted"] = *predicted;
    j["difference"] = est.lambda_fit - *predicted;
  }
  return j;
}

namespace {

constexpr double kCensusRadius = 200.0;
constexpr double kCensusCsvRadius = 50.0;  // about 2.4e4 rows; the full census has millions

census::ZeroCensus clip(const census::ZeroCensus& c, double r) {
  census::ZeroCensus out;
  out.radius_max = std::min(r, c.radius_max);
  for (std::size_t i = 0; i < c.zeros.size(); ++i) {
    if (std::abs(c.zeros[i]) > r) continue;
    out.zeros.push_back(c.zeros[i]);
    out.signs.push_back(c.signs[i]);
    out.abs_value.push_back(c.abs_value[i]);
    out.abs_slope_minus_sign.push_back(c.abs_slope_minus_sign[i]);
  }
  return out;
}

}  // namespace

ordered_json cmd_qc(const RunConfig& config) {
  validate(config);
  const qc::QuasiregularMapY y;
  const std::filesystem::path out = config.output_dir;
  std::vector<std::string> plot_errors;

  // census of zeros and poles
  const qc::YCensus census = qc::zero_pole_census_Y(kCensusRadius);
  const double slope = qc::census_slope_Y(census, 10.0, 200.0);
  {
    std::ostringstream csv;
    census::write_census_csv(csv, clip(census.zeros, kCensusCsvRadius), "zero", true);
    census::write_census_csv(csv, clip(census.poles, kCensusCsvRadius), "pole", false);
    report::write_text_file(out / "census_Y.csv", csv.str());
  }
  ordered_json ratios = ordered_json::object();
  for (double r : {20.0, 40.0, 80.0}) {
    ratios[std::to_string(static_cast<int>(r))] =
        static_cast<double>(census.n_Y(2.0 * r)) / static_cast<double>(census.n_Y(r));
  }

  const qc::QuasiconformalityReport qcr = qc::quasiconformality_check();
  const qc::IntegrabilityReport ir = qc::integrability_check(128.0);
  const qc::GammaFit gf = qc::fit_gamma_growth(4, config.n_max);
  const qc::SeamReport seams = qc::seam_continuity(1000);

  // dilatation field on [-3, 3]^2
  constexpr int kGrid = 121;
  std::vector<qc::DilatationSample> field;
  report::HeatMap heat{"|mu_Y| on [-3,3]^2", -3.0, 3.0, -3.0, 3.0, kGrid, kGrid, {}, 0.0, 1.0};
  heat.values.assign(static_cast<std::size_t>(kGrid) * kGrid, NAN);
  for (int jy = 0; jy < kGrid; ++jy) {
    for (int ix = 0; ix < kGrid; ++ix) {
      const Complex z(-3.0 + 6.0 * (ix + 0.5) / kGrid, -3.0 + 6.0 * (jy + 0.5) / kGrid);
      const qc::MuSample m = qc::mu_Y_analytic(z);
      if (!m.resolved) continue;
      field.push_back({z, m.mu, 0.0, m.region});
      heat.values[static_cast<std::size_t>(jy) * kGrid + ix] = std::abs(m.mu);
    }
  }
  {
    std::ostringstream csv;
    qc::write_dilatation_csv(csv, field);
    report::write_text_file(out / "dilatation.csv", csv.str());
  }

  ordered_json gamma = ordered_json::array();
  for (const auto& p : gf.points) {
    gamma.push_back({{"n", p.n}, {"max_loglog", p.max_loglog}, {"samples_skipped", p.samples_skipped}});
  }
  write_json(out / "gamma.json", gamma);

  try_plot(out / "nY_loglog.svg", plot_errors, [&](std::ostream& os) {
    report::Series s{{}, {}, "n_Y(r)", false};
    report::Series ref{{}, {}, "r^3 reference", false};
    const double c3 = static_cast<double>(census.n_Y(200.0)) / 8e6;
    for (int k = 0; k <= 80; ++k) {
      const double r = 10.0 * std::pow(20.0, k / 80.0);
      s.x.push_back(r);
      s.y.push_back(static_cast<double>(census.n_Y(r)));
      ref.x.push_back(r);
      ref.y.push_back(c3 * r * r * r);
    }
    report::write_line_svg(os, {"Zeros and poles of Y", "r", "n_Y(r)", true, true, {s, ref}});
  });
  try_plot(out / "mu_heatmap.svg", plot_errors, [&](std::ostream& os) { report::write_heatmap_svg(os, heat); });
  try_plot(out / "gamma_growth.svg", plot_errors, [&](std::ostream& os) {
    report::Series pts{{}, {}, "max log+ log+ |Y| on Gamma_n", true};
    report::Series line{{}, {}, "C n", false};
    for (const auto& p : gf.points) {
      pts.x.push_back(p.n);
      pts.y.push_back(p.max_loglog);
      line.x.push_back(p.n);
      line.y.push_back(gf.C * p.n);
    }
    report::write_line_svg(os, {"Growth on Gamma_n", "n", "max log+ log+ |Y|", false, false, {pts, line}});
  });

  ordered_json j;
  j["command"] = "qc";
  j["x0"] = y.x0();
  j["slope_nY"] = slope;
  j["nY_doubling_ratio"] = ratios;
  j["census_radius"] = kCensusRadius;
  j["census_zeros"] = census.zeros.zeros.size();
  j["census_poles"] = census.poles.zeros.size();
  j["census_csv_radius"] = kCensusCsvRadius;
  j["k_max"] = qcr.k_max;
  ordered_json levels = ordered_json::array();
  for (const auto& l : qcr.levels) levels.push_back({{"n", l.n}, {"k_max", l.k_max}, {"samples", l.samples}});
  j["k_max_levels"] = levels;
  j["k_max_spread"] = qcr.spread;
  j["psi_k"] = qcr.psi_k;
  j["integral_value"] = ir.value;
  j["integral_r_max"] = 128.0;
  j["integral_relative_change"] = ir.relative_change;
  j["annulus_contributions"] = ir.levels.back().annulus;
  j["annuli_decay"] = ir.annuli_decay;
  j["gamma_C"] = gf.C;
  j["gamma_relative_rms"] = gf.relative_rms;
  j["gamma_n_max"] = config.n_max;
  j["seam_jump_f1"] = seams.f1_seam;
  j["seam_jump_f2"] = seams.f2_seam;
  j["gamma2_trace_points"] = y.gamma2().u.size();
  j["plot_errors"] = plot_errors;
  return j;
}

ordered_json cmd_rays(const RunConfig& config) {
  validate(config);
  const CoefficientSpec spec = parse_coefficient_spec(config.coefficient_spec);
  if (spec.kind != CoefficientSpec::Kind::kPolynomial || spec.values.size() < 2) {
    usage("rays needs a polynomial spec of degree >= 1, got '" + spec.text + "'");
  }
  std::vector<Complex> c(spec.values.begin(), spec.values.end());
  const auto rays = bl::critical_rays(CoefficientFunction::polynomial(std::move(c)));
  bool zero = false;
  for (double t : rays) zero = zero || t < 1e-12 || 2.0 * kPi - t < 1e-12;
  ordered_json j;
  j["command"] = "rays";
  j["coefficient"] = spec_text(config);
  j["degree"] = spec.values.size() - 1;
  j["count"] = rays.size();
  j["rays"] = rays;
  j["positive_real_axis_critical"] = zero;
  return j;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kInvalidInput:
      return 2;
    case ErrorCode::kInsufficientData:
    case ErrorCode::kInsufficientScan:
      return 4;
    default:
      return 3;
  }
}

void apply_thread_env() {
  const char* v = std::getenv("BANKLAINE_THREADS");
  if (v == nullptr || *v == '\0') return;
  int n = 0;
  const std::string s(v);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n < 1) {
    usage("BANKLAINE_THREADS must be a positive integer, got '" + s + "'");
  }
  sweeps::set_thread_cap(n);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    apply_thread_env();
    ordered_json j;
    switch (config.command) {
      case Command::kVerify: j = cmd_verify(config); break;
      case Command::kLambda: j = cmd_lambda(config); break;
      case Command::kQc: j = cmd_qc(config); break;
      case Command::kRays: j = cmd_rays(config); break;
    }
    const std::string text = j.dump(2) + "\n";
    report::write_text_file(config.output_dir / (std::string(to_string(config.command)) + ".json"), text);
    out << text;
    if (config.command == Command::kVerify && !j["all_signs_ok"].get<bool>()) {
      err << "error: zero property or sign alternation failed\n";
      return 3;
    }
    return 0;
  } catch (const Error& e) {
    err << "error [" << banklaine::to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace banklaine::harness
