#include <benchmark/benchmark.h>

#include "vibronic/montecarlo.hpp"

using namespace vibronic;

namespace {

const PhaseSpaceGrid kGrid;
constexpr Index kDimension = 82;

}  // namespace

static void BM_ExactField(benchmark::State& state) {
  const VibronicDensity cat = make_cat_state({2.0, 0.0}, kDimension);
  for (auto _ : state) benchmark::DoNotOptimize(exact_field(cat, kGrid, 1));
}
BENCHMARK(BM_ExactField)->Unit(benchmark::kMillisecond);

static void BM_NumberStatistics(benchmark::State& state) {
  const VibronicDensity cat = make_cat_state({2.0, 0.0}, kDimension);
  for (auto _ : state)
    benchmark::DoNotOptimize(displaced_number_statistics(cat, {1.0, 0.5}, kDimension));
}
BENCHMARK(BM_NumberStatistics)->Unit(benchmark::kMicrosecond);

static void BM_ScheduleBank(benchmark::State& state) {
  DriveConfig drive;
  ScheduleOptions options;
  options.k_cap = 30;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_schedule_bank(drive, state.range(0), kDimension, options));
}
BENCHMARK(BM_ScheduleBank)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_SampleGrid(benchmark::State& state) {
  const VibronicDensity cat = make_cat_state({2.0, 0.0}, kDimension);
  DriveConfig drive;
  ScheduleOptions options;
  options.k_cap = 30;
  const ScheduleBank bank = build_schedule_bank(drive, 30, kDimension, options);
  SamplerConfig config;
  config.trials = state.range(0);
  config.threads = 1;
  const PhaseSpaceGrid grid{-1.0, 1.0, 5, -1.0, 1.0, 5};
  for (auto _ : state) benchmark::DoNotOptimize(sample_grid(cat, grid, drive, bank, config));
}
BENCHMARK(BM_SampleGrid)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
