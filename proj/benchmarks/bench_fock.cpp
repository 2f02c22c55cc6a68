#include <benchmark/benchmark.h>

#include "vibronic/fock.hpp"

using namespace vibronic;

static void BM_DisplacementPade(benchmark::State& state) {
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(displacement_operator({1.3, -0.7}, n));
}
BENCHMARK(BM_DisplacementPade)->Arg(32)->Arg(64)->Arg(96);

static void BM_DisplacementSpectral(benchmark::State& state) {
  const Index n = state.range(0);
  const DisplacementSpectrum spectrum(n);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum.displacement({1.3, -0.7}));
}
BENCHMARK(BM_DisplacementSpectral)->Arg(32)->Arg(64)->Arg(96);

static void BM_DisplacedParitySpectral(benchmark::State& state) {
  const Index n = state.range(0);
  const DisplacementSpectrum spectrum(n);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum.displaced_parity({1.3, -0.7}));
}
BENCHMARK(BM_DisplacedParitySpectral)->Arg(64)->Arg(96);
