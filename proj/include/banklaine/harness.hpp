#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "banklaine/bank_laine.hpp"
#include "banklaine/coefficient.hpp"
#include "banklaine/core.hpp"
#include "banklaine/zero_census.hpp"

namespace banklaine::harness {

enum class Command { kVerify, kLambda, kQc, kRays };

[[nodiscard]] Command parse_command(const std::string& name);
[[nodiscard]] const char* to_string(Command c);

struct RunConfig {
  Command command = Command::kVerify;
  std::string coefficient_spec = "poly:0,1";
  std::optional<std::pair<double, double>> window;
  std::optional<double> tolerance;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  int n_max = 20;
};

/// Throws kUsage unless tolerance > 0, the window is ordered and n_max fits.
void validate(const RunConfig& config);

/// Parsed form of
///   const:c | poly:a0,a1,...,an | trig:eta,w1,w2,(+|-) | zeros:cubic | zeros:<exponent>
struct CoefficientSpec {
  enum class Kind { kConstant, kPolynomial, kTrig, kPlanted };
  Kind kind = Kind::kPolynomial;
  std::vector<double> values;  // constant or polynomial coefficients
  bl::TrigFamily trig{};
  double planted_exponent = 0.0;
  std::string text;
};

/// Throws kUsage naming the offending token.
[[nodiscard]] CoefficientSpec parse_coefficient_spec(const std::string& spec);

/// Bank-Laine function of a spec: the trig family itself, or f1 f2 for the
/// normalized pair of y'' + A y = 0 at 0. Planted specs throw kUsage.
[[nodiscard]] bl::BankLaineFunction make_function(const CoefficientSpec& spec);

/// Planted census with n(r) = 2 floor(r^p) zeros at +-k^{1/p}.
[[nodiscard]] census::ZeroCensus planted_census(double exponent, double radius_max);

/// Real-zero census of E on [a, b]; the step follows the local wavelength of A.
[[nodiscard]] census::ZeroCensus real_census(const bl::BankLaineFunction& e, double a, double b);

[[nodiscard]] nlohmann::ordered_json cmd_verify(const RunConfig& config);
[[nodiscard]] nlohmann::ordered_json cmd_lambda(const RunConfig& config);
[[nodiscard]] nlohmann::ordered_json cmd_qc(const RunConfig& config);
[[nodiscard]] nlohmann::ordered_json cmd_rays(const RunConfig& config);

/// 0 success, 2 usage, 3 numerical failure, 4 insufficient data.
[[nodiscard]] int exit_code(ErrorCode code);

/// Reads BANKLAINE_THREADS and caps the OpenMP team. Throws kUsage on a bad value.
void apply_thread_env();

/// Runs one command, writes <out>/<command>.json and echoes it to `out`.
/// Errors go to `err`; the return value is the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace banklaine::harness
