#include <benchmark/benchmark.h>

#include <vector>

#include "fracspde/kernel.hpp"
#include "fracspde/noise.hpp"
#include "fracspde/picard.hpp"
#include "fracspde/solver.hpp"

using namespace fracspde;

static void BM_KernelValues(benchmark::State& state) {
  const KernelSpec spec{1.5, Grid1D(16, static_cast<std::size_t>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(kernel_values(spec, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelValues)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_NoiseRow(benchmark::State& state) {
  const NoiseStream noise(Grid1D(16, static_cast<std::size_t>(state.range(0))), 1e-3, 1);
  std::vector<double> row(state.range(0));
  std::size_t m = 0;
  for (auto _ : state) {
    noise.fill(m++, row);
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NoiseRow)->Arg(1024)->Arg(16384);

// 100 steps of the exponential Euler scheme, noise generation included.
static void BM_SolverSteps(benchmark::State& state) {
  SimConfig c;
  c.grid = Grid1D(16, static_cast<std::size_t>(state.range(0)));
  c.n_steps = 100;
  c.coefficients = make_preset(state.range(1) ? "affine" : "additive");
  MildStepper stepper(c);
  const NoiseStream noise(c.grid, c.dt, 3);
  const std::vector<double> u0(c.grid.size(), 0.0);
  for (auto _ : state) {
    stepper.run(u0, [&](std::size_t m, std::span<double> out) { noise.fill(m, out); },
                [](std::size_t, std::span<const double>) {});
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SolverSteps)->Args({1024, 0})->Args({1024, 1})->Args({4096, 1})->Unit(benchmark::kMillisecond);

static void BM_PicardIterate(benchmark::State& state) {
  SimConfig c;
  c.grid = Grid1D(8, 64);
  c.dt = 4e-3;
  c.n_steps = 125;
  c.coefficients = make_preset("affine");
  c.initial = {InitialKind::smooth_cosine, 1.0};
  const auto noise = sample_noise(c.grid, c.dt, c.n_steps, 4);
  const auto u0 = picard_zeroth(c, noise);
  for (auto _ : state) benchmark::DoNotOptimize(picard_iterate(u0, c, noise));
}
BENCHMARK(BM_PicardIterate)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
