// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hetero/asymptotics.hpp"
#include "hetero/dirichlet.hpp"
#include "hetero/heteroclinic.hpp"
#include "hetero/sampled.hpp"
#include "hetero/sliding_window.hpp"

using namespace hetero;

static void BM_SlidingExtrema(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sliding_extrema(v, n / 10 + 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SlidingExtrema)->Range(1 << 10, 1 << 20);

static void BM_EnergyE(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto u = SampledFunction::sample([](double x) { return std::tanh(x); }, -4.0, 4.0, h);
  const auto W = DoubleWell::quartic();
  for (auto _ : state) benchmark::DoNotOptimize(energy_E(u, -3.0, 3.0, 0.5, W));
}
BENCHMARK(BM_EnergyE)->Arg(1 << 8)->Arg(1 << 12)->Arg(1 << 16);

static void BM_SolveGeneral(benchmark::State& state) {
  const auto W = DoubleWell::quartic();
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_discrete_dirichlet(K, 0.5, W));
}
BENCHMARK(BM_SolveGeneral)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolveNode(benchmark::State& state) {
  const auto W = DoubleWell::quartic();
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_symmetric_node(K, 0.25, W));
}
BENCHMARK(BM_SolveNode)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Shoot(benchmark::State& state) {
  const auto W = DoubleWell::quartic();
  const double r = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shoot_heteroclinic(r, W, Symmetry::bond_odd));
}
BENCHMARK(BM_Shoot)->Arg(2)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_DirichletGrid(benchmark::State& state) {
  const DrProblem p{0.0, 1.0, 0.05, [](double x) { return x; }, [](double x) { return 1.0 - x; },
                    [](double x) { return x * x - 0.5; }};
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_dr_on_grid(p, h));
}
BENCHMARK(BM_DirichletGrid)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ClassicalTable(benchmark::State& state) {
  const auto W = DoubleWell::pendulum();
  for (auto _ : state) benchmark::DoNotOptimize(ClassicalHeteroclinic(W));
}
BENCHMARK(BM_ClassicalTable)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
