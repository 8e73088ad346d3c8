#include <benchmark/benchmark.h>

#include <vector>

#include "frontwave/riemann.hpp"
#include "frontwave/scenarios.hpp"
#include "frontwave/simulator.hpp"

namespace fw = frontwave;

static void BM_RiemannBurgers(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  const auto flux = fw::sample_flux(fw::burgers_flux(1.0), nu);
  const fw::GridIndex top = flux.max_index();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fw::solve_riemann(flux, top, 0));
    benchmark::DoNotOptimize(fw::solve_riemann(flux, 0, top));
  }
}
BENCHMARK(BM_RiemannBurgers)->Arg(4)->Arg(8)->Arg(12);

static void BM_RunIndicator(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  const auto flux = fw::sample_flux(fw::burgers_flux(1.0), nu);
  const std::vector<fw::Sample> samples{{0.0, 1.0}, {1.0, 0.0}};
  const auto u0 = fw::approximate_initial_datum(samples, nu);
  for (auto _ : state) benchmark::DoNotOptimize(fw::run(u0, flux, 1.0).events().size());
}
BENCHMARK(BM_RunIndicator)->Arg(4)->Arg(6)->Arg(8);

static void BM_RunRandom(benchmark::State& state) {
  const int nu = static_cast<int>(state.range(0));
  const auto flux = fw::sample_flux(fw::cubic_flux(1.0), nu);
  const auto u0 = fw::approximate_initial_datum(fw::random_samples(7, 20, 1.0, 3.5), nu);
  for (auto _ : state) benchmark::DoNotOptimize(fw::run(u0, flux, 1.0).events().size());
}
BENCHMARK(BM_RunRandom)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
