#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banklaine/harness.hpp"

int main(int argc, char** argv) {
  namespace h = banklaine::harness;
  CLI::App app{"Bank-Laine functions: verification, zero censuses and the quasiregular construction"};
  app.require_subcommand(1, 1);

  h::RunConfig config;
  std::string coeff;
  std::vector<double> window;
  double tol = 0.0;
  std::string out = "out";
  std::uint64_t seed = 1;
  int nmax = 20;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "Bank-Laine identity, zero property and sign alternation"},
      {"lambda", "zero census and exponent of convergence"},
      {"qc", "quasiregular map Y: census, dilatation, integrability, growth"},
      {"rays", "critical rays of a polynomial coefficient"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--coeff", coeff, "const:c | poly:a0,...,an | trig:eta,w1,w2,+/- | zeros:cubic");
    sub->add_option("--window", window, "RMIN RMAX")->expected(2);
    sub->add_option("--tol", tol, "tolerance override");
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "seed for random sample points")->capture_default_str();
    sub->add_option("--nmax", nmax, "largest n for the Gamma_n growth fit")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    config.command = h::parse_command(chosen->get_name());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!coeff.empty()) config.coefficient_spec = coeff;
  if (window.size() == 2) config.window = std::pair{window[0], window[1]};
  if (chosen->count("--tol") > 0) config.tolerance = tol;
  config.output_dir = out;
  config.seed = seed;
  config.n_max = nmax;
  return h::run(config, std::cout, std::cerr);
}
