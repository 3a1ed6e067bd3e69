// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "bose2d/asymptotics.hpp"
#include "bose2d/dyson.hpp"
#include "bose2d/suites.hpp"

namespace {

using namespace bose2d;

void BM_SweepSerial(benchmark::State& state) {
  const SweepSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(spec));
}

void BM_SweepParallel(benchmark::State& state) {
  const SweepSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec));
}

void BM_DysonSuiteSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_dyson_suite_serial(20, 0));
}

void BM_DysonSuiteParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_dyson_suite(20, 0));
}

void BM_DysonAnglesSerial(benchmark::State& state) {
  const auto v = RadialPotential::square_well(4.0, 1.0);
  const auto sol = solve_radial(v, 1.0, 2);
  const auto U = SoftPotentialUR::make(1.0, 2.5, sol.a()).potential();
  const auto f = RadialFunction::minimizer(sol, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_dyson_inequality_serial(
        StarDomain::disc(3.0), [&](double) { return f; }, v, U, 1.0, sol.a(), 256));
  }
}

void BM_DysonAnglesParallel(benchmark::State& state) {
  const auto v = RadialPotential::square_well(4.0, 1.0);
  const auto sol = solve_radial(v, 1.0, 2);
  const auto U = SoftPotentialUR::make(1.0, 2.5, sol.a()).potential();
  const auto f = RadialFunction::minimizer(sol, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_dyson_inequality(
        StarDomain::disc(3.0), [&](double) { return f; }, v, U, 1.0, sol.a(), 256));
  }
}

void BM_LemmaSuiteSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_lemma_suite_serial(10, 0));
}

void BM_LemmaSuiteParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_lemma_suite(10, 0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DysonSuiteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DysonSuiteParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DysonAnglesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DysonAnglesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaSuiteSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaSuiteParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
