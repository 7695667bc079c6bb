// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "choquet/distortion.hpp"
#include "choquet/distribution.hpp"
#include "choquet/lq.hpp"
#include "choquet/regularizer.hpp"
#include "choquet/simulate.hpp"
#include "choquet/static_opt.hpp"

namespace {

using namespace choquet;

LQModel benchmark_model() {
  LQModel m;
  m.A = 0.0;
  m.B = 1.0;
  m.C = 0.0;
  m.D = 0.0;
  m.M = 1.0;
  m.R = 0.0;
  m.N = 1.0;
  m.P = 0.0;
  m.L = 0.0;
  m.rho = 2.0;
  m.lambda = 1.0;
  return m;
}

void bm_phi_quantile_smooth(benchmark::State& state) {
  const auto d = Distortion::gini();
  const auto pi = Distribution::normal(0.3, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_quantile(d, pi).value);
}
BENCHMARK(bm_phi_quantile_smooth);

void bm_phi_quantile_discrete(benchmark::State& state) {
  const auto d = Distortion::inter_es(0.75);
  const auto pi = Distribution::discrete({-2.0, -0.5, 0.0, 1.0, 3.0},
                                         {0.1, 0.2, 0.3, 0.25, 0.15});
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_quantile(d, pi).value);
}
BENCHMARK(bm_phi_quantile_discrete);

void bm_phi_survival(benchmark::State& state) {
  const auto d = Distortion::cre();
  const auto pi = Distribution::normal(0.3, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_survival(d, pi).value);
}
BENCHMARK(bm_phi_survival);

void bm_maximize(benchmark::State& state) {
  const auto d = Distortion::discrete_uniform(0.1, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize(d, {1.25, 0.8}).distribution.mean());
}
BENCHMARK(bm_maximize);

void bm_lq_solve(benchmark::State& state) {
  const auto m = benchmark_model();
  const auto d = Distortion::gini();
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, d).k2);
}
BENCHMARK(bm_lq_solve);

void bm_policy(benchmark::State& state) {
  const auto m = benchmark_model();
  const auto d = Distortion::eps_greedy(0.2);
  const auto sol = solve(m, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(policy(m, sol, d, 1.5).mean());
}
BENCHMARK(bm_policy);

// One short discounted-reward estimate; cost scales with paths * horizon/dt.
void bm_estimate_value(benchmark::State& state) {
  LQModel m = benchmark_model();
  m.C = 0.2;
  m.D = 0.5;
  const auto d = Distortion::gini();
  const auto sol = solve(m, d);
  SimConfig cfg;
  cfg.dt = 1e-2;
  cfg.horizon = 5.0;
  cfg.n_paths = static_cast<std::size_t>(state.range(0));
  cfg.seed = 42;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_value(m, sol, d, 1.0, cfg).value_estimate);
  state.SetItemsProcessed(state.iterations() * cfg.n_paths *
                          static_cast<std::int64_t>(cfg.horizon / cfg.dt));
}
BENCHMARK(bm_estimate_value)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void bm_concave_envelope(benchmark::State& state) {
  const auto ind = Distortion::piecewise_linear(
      {0.0, 0.25, 0.25, 0.75, 0.75, 1.0}, {0.0, 0.0, 1.0, 1.0, 0.0, 0.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(ind.concave_envelope().l2_norm_sq());
}
BENCHMARK(bm_concave_envelope);

}  // namespace

BENCHMARK_MAIN();
