// Microbenchmarks for the hot paths: special functions, the planar
// power-law quadrature, the closed-form pipeline, and simulation trials.

#include <benchmark/benchmark.h>

#include "secnet/analytic.hpp"
#include "secnet/config.hpp"
#include "secnet/montecarlo.hpp"
#include "secnet/quadrature.hpp"
#include "secnet/specfun.hpp"

using namespace secnet;

namespace {

void bm_ln_gamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ln_gamma(x));
    x = x < 50.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(bm_ln_gamma);

void bm_reg_lower_gamma(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_lower_gamma(2.5, x));
    x = x < 20.0 ? x + 0.13 : 0.0;
  }
}
BENCHMARK(bm_reg_lower_gamma);

void bm_hyp2f1(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyp2f1(1.0, 3.1, 1.9, 0.45));
  }
}
BENCHMARK(bm_hyp2f1);

void bm_relay_disk_integral(benchmark::State& state) {
  NetworkConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_z(1, cfg, {0.0, 60.0}));
  }
}
BENCHMARK(bm_relay_disk_integral);

void bm_jam_integral(benchmark::State& state) {
  NetworkConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jam_integral(2, cfg));
  }
}
BENCHMARK(bm_jam_integral);

void bm_dgr_closed_form(benchmark::State& state) {
  const DgrInputs in{{0.31, 6.2e-4}, {0.0094, 5.3e-7}, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dgr_sop(in));
  }
}
BENCHMARK(bm_dgr_closed_form);

void bm_analytic_sop(benchmark::State& state) {
  NetworkConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic_sop(cfg));
  }
}
BENCHMARK(bm_analytic_sop);

void bm_run_trial(benchmark::State& state) {
  NetworkConfig cfg;
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(cfg, 1, index++));
  }
}
BENCHMARK(bm_run_trial);

void bm_estimate_sop_1k(benchmark::State& state) {
  NetworkConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_sop(cfg, 1000, 1, 1));
  }
}
BENCHMARK(bm_estimate_sop_1k)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
