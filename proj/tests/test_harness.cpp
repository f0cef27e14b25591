#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "banklaine/harness.hpp"

using namespace banklaine;
namespace h = banklaine::harness;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("banklaine_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

h::RunConfig config(h::Command c, const std::string& spec, const std::string& dir) {
  h::RunConfig cfg;
  cfg.command = c;
  cfg.coefficient_spec = spec;
  cfg.output_dir = scratch(dir);
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidInput;  // not reached in passing tests
}

}  // namespace

TEST_SUITE("harness_cli") {
  TEST_CASE("coefficient grammar") {
    const auto a = h::parse_coefficient_spec("const:0.25");
    CHECK(a.kind == h::CoefficientSpec::Kind::kConstant);
    CHECK(a.values == std::vector<double>{0.25});
    const auto b = h::parse_coefficient_spec("poly:0,-1,2.5e-1");
    CHECK(b.values == std::vector<double>{0.0, -1.0, 0.25});
    const auto t = h::parse_coefficient_spec("trig:1,0,-1.5708,+");
    CHECK(t.trig.eta == 1.0);
    CHECK(t.trig.omega2 == -1.5708);
    CHECK(t.trig.sign == 1);
    CHECK(h::parse_coefficient_spec("trig:2,0.1,1,-").trig.sign == -1);
    CHECK(h::parse_coefficient_spec("zeros:cubic").planted_exponent == 3.0);
  }

  TEST_CASE("parse errors name the offending token") {
    for (const std::string bad : {"poly:0,x1", "const:", "trig:1,0,1,*", "bessel:1", "poly1", "poly:1,0"}) {
      try {
        (void)h::parse_coefficient_spec(bad);
        FAIL("accepted " << bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kUsage);
        CHECK(h::exit_code(e.code()) == 2);
      }
    }
    try {
      (void)h::parse_coefficient_spec("poly:0,x1");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("'x1'") != std::string::npos);
    }
  }

  TEST_CASE("verify on the trig family") {
    const auto j = h::cmd_verify(config(h::Command::kVerify, "trig:1,0,-1.5708,+", "verify_trig"));
    CHECK(j["all_signs_ok"].get<bool>());
    CHECK(j["max_residual"].get<double>() < 1e-10);
    CHECK(j["zero_count"].get<int>() > 30);
    CHECK(j["residual_points"].get<int>() == 100);
  }

  TEST_CASE("verify on A = 1/4 reproduces sin z") {
    const auto j = h::cmd_verify(config(h::Command::kVerify, "const:0.25", "verify_sin"));
    CHECK(j["all_signs_ok"].get<bool>());
    CHECK(j["closed_form_max_error"].get<double>() < 1e-10);
    CHECK(j["zero_count"].get<int>() == 19);
  }

  TEST_CASE("verify on A = z") {
    auto cfg = config(h::Command::kVerify, "poly:0,1", "verify_airy");
    cfg.window = std::pair{0.0, 30.0};
    const auto j = h::cmd_verify(cfg);
    CHECK(j["zero_count"].get<int>() > 0);
    CHECK(j["alternation_ok"].get<bool>());
    CHECK(j["all_signs_ok"].get<bool>());
    CHECK(std::filesystem::exists(cfg.output_dir / "verify_census.csv"));
  }

  TEST_CASE("lambda estimates") {
    auto cfg = config(h::Command::kLambda, "poly:0,1", "lambda_airy");
    const auto a = h::cmd_lambda(cfg);
    CHECK(std::abs(a["lambda_fit"].get<double>() - 1.5) <= 0.1);
    CHECK(a["predicted"].get<double>() == 1.5);
    CHECK(std::filesystem::exists(cfg.output_dir / "lambda_estimate.json"));

    auto sin_cfg = config(h::Command::kLambda, "const:0.25", "lambda_sin");
    sin_cfg.window = std::pair{100.0, 2000.0};
    CHECK(std::abs(h::cmd_lambda(sin_cfg)["lambda_fit"].get<double>() - 1.0) <= 0.05);

    const auto c = h::cmd_lambda(config(h::Command::kLambda, "zeros:cubic", "lambda_cubic"));
    CHECK(std::abs(c["lambda_fit"].get<double>() - 3.0) <= 0.05);
  }

  TEST_CASE("lambda with too few zeros exits 4 and reports the count") {
    auto cfg = config(h::Command::kLambda, "const:0.25", "lambda_few");
    cfg.window = std::pair{2.0, 20.0};
    std::ostringstream out, err;
    CHECK(h::run(cfg, out, err) == 4);
    CHECK(err.str().find("only 12 zeros") != std::string::npos);
  }

  TEST_CASE("rays") {
    const auto a = h::cmd_rays(config(h::Command::kRays, "poly:0,1", "rays1"));
    CHECK(a["count"].get<int>() == 3);
    CHECK(a["positive_real_axis_critical"].get<bool>());
    CHECK(h::cmd_rays(config(h::Command::kRays, "poly:0,0,1", "rays2"))["count"].get<int>() == 4);
    const auto c = h::cmd_rays(config(h::Command::kRays, "poly:0,-1", "rays3"));
    CHECK_FALSE(c["positive_real_axis_critical"].get<bool>());
    CHECK(c["rays"][0].get<double>() == doctest::Approx(kPi / 3.0));
    CHECK(code_of([] { (void)h::cmd_rays(config(h::Command::kRays, "poly:3", "rays4")); }) == ErrorCode::kUsage);
    CHECK(code_of([] { (void)h::cmd_rays(config(h::Command::kRays, "const:1", "rays5")); }) == ErrorCode::kUsage);
  }

  TEST_CASE("identical configs give byte-identical reports") {
    auto cfg = config(h::Command::kVerify, "poly:0,1", "determinism");
    cfg.seed = 42;
    cfg.window = std::pair{-10.0, 10.0};
    std::ostringstream o1, o2, e1, e2;
    REQUIRE(h::run(cfg, o1, e1) == 0);
    const std::string first = slurp(cfg.output_dir / "verify.json");
    REQUIRE(h::run(cfg, o2, e2) == 0);
    CHECK(first == slurp(cfg.output_dir / "verify.json"));
    CHECK(o1.str() == o2.str());
    CHECK(first.back() == '\n');
  }

  TEST_CASE("usage errors exit 2") {
    std::ostringstream out, err;
    auto cfg = config(h::Command::kVerify, "poly:0,q", "usage");
    CHECK(h::run(cfg, out, err) == 2);
    cfg.coefficient_spec = "poly:0,1";
    cfg.tolerance = -1.0;
    CHECK(h::run(cfg, out, err) == 2);
    cfg.tolerance.reset();
    cfg.window = std::pair{5.0, 1.0};
    CHECK(h::run(cfg, out, err) == 2);
    CHECK(code_of([] { (void)h::parse_command("plot"); }) == ErrorCode::kUsage);
  }

  TEST_CASE("exit code contract") {
    CHECK(h::exit_code(ErrorCode::kUsage) == 2);
    CHECK(h::exit_code(ErrorCode::kStiffness) == 3);
    CHECK(h::exit_code(ErrorCode::kConstruction) == 3);
    CHECK(h::exit_code(ErrorCode::kInsufficientData) == 4);
    CHECK(h::exit_code(ErrorCode::kInsufficientScan) == 4);
  }

  TEST_CASE("qc run writes its data files") {
    auto cfg = config(h::Command::kQc, "poly:0,1", "qc");
    cfg.n_max = 8;
    const auto j = h::cmd_qc(cfg);
    CHECK(j["slope_nY"].get<double>() == doctest::Approx(3.0).epsilon(0.1 / 3.0));
    CHECK(j["k_max"].get<double>() < 1.0);
    CHECK(std::isfinite(j["integral_value"].get<double>()));
    CHECK(std::isfinite(j["gamma_C"].get<double>()));
    CHECK(j["plot_errors"].empty());
    for (const char* f : {"census_Y.csv", "dilatation.csv", "gamma.json", "nY_loglog.svg", "mu_heatmap.svg",
                          "gamma_growth.svg"}) {
      CHECK_MESSAGE(std::filesystem::exists(cfg.output_dir / f), f);
    }
    const std::string census = slurp(cfg.output_dir / "census_Y.csv");
    CHECK(census.rfind("x,sign,abs_E,abs_Eprime_minus_sign,kind\n", 0) == 0);
    CHECK(census.find(",pole\n") != std::string::npos);
    const auto gamma = nlohmann::json::parse(slurp(cfg.output_dir / "gamma.json"));
    REQUIRE(gamma.is_array());
    CHECK(gamma.size() == 5);
    CHECK(gamma[0].contains("samples_skipped"));
  }
}
