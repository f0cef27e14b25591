#include <benchmark/benchmark.h>

#include "banklaine/sweeps.hpp"

using namespace banklaine;
using sweeps::Execution;

namespace {

Execution exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Execution::kSerial : Execution::kParallel; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) == 0 ? "serial" : "parallel"); }

void bm_dilatation_sup(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(sweeps::dilatation_sup(80, exec_of(s)));
  label(s);
}

void bm_integrability_grid(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(sweeps::integrability_grid(32, 256, 64.0, exec_of(s)));
  label(s);
}

void bm_gamma_n_samples(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(sweeps::gamma_n_samples(10, 256, exec_of(s)));
  label(s);
}

void bm_bl_residuals(benchmark::State& s) {
  const auto e = bl::BankLaineFunction::from_pair(ode::solution_pair(CoefficientFunction::polynomial({0.0, 1.0}), 0.0));
  std::vector<Complex> pts;
  for (int k = 0; k < 400; ++k) pts.emplace_back(-20.0 + 0.1 * k, 0.5);
  for (auto _ : s) benchmark::DoNotOptimize(sweeps::bl_residuals(e, pts, exec_of(s)));
  label(s);
}

}  // namespace

BENCHMARK(bm_dilatation_sup)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_integrability_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gamma_n_samples)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_bl_residuals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
