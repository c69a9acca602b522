#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "grf/hermitian.hpp"
#include "grf/random.hpp"
#include "grf/spectral.hpp"
#include "grf/synth.hpp"

namespace {

grf::GridSpec square_grid(std::int64_t side) {
  return grf::GridSpec({1.0, 1.0}, {side, side});
}

void BM_SynthesizeTwoFft(benchmark::State& state) {
  const grf::GridSpec grid = square_grid(state.range(0));
  const grf::PolyDecayDensity density(1.0, 1, 1, 2, 2);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grf::synthesize(grid, density, seed++, grf::Algorithm::two_fft));
  }
  state.SetComplexityN(grid.point_count());
}
BENCHMARK(BM_SynthesizeTwoFft)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SynthesizeOneFftOverwrite(benchmark::State& state) {
  const grf::GridSpec grid = square_grid(state.range(0));
  const grf::PolyDecayDensity density(1.0, 1, 1, 2, 2);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grf::synthesize(grid, density, seed++, grf::Algorithm::one_fft_overwrite));
  }
  state.SetComplexityN(grid.point_count());
}
BENCHMARK(BM_SynthesizeOneFftOverwrite)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SynthesizeOneFftRecursive(benchmark::State& state) {
  const grf::GridSpec grid = square_grid(state.range(0));
  const grf::PolyDecayDensity density(1.0, 1, 1, 2, 2);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grf::synthesize(grid, density, seed++, grf::Algorithm::one_fft_recursive));
  }
  state.SetComplexityN(grid.point_count());
}
BENCHMARK(BM_SynthesizeOneFftRecursive)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_SpectrumExactSet(benchmark::State& state) {
  const grf::GridSpec grid = square_grid(state.range(0));
  const grf::PolyDecayDensity density(1.0, 1, 1, 2, 2);
  std::uint64_t substream = 0;
  for (auto _ : state) {
    grf::Xoshiro256Stream rng(7, substream++);
    benchmark::DoNotOptimize(
        grf::synthesize_spectrum(grid, density, rng, grf::SpectrumMode::exact_set));
  }
}
BENCHMARK(BM_SpectrumExactSet)->RangeMultiplier(2)->Range(64, 512);

void BM_GaussianDraws(benchmark::State& state) {
  grf::Xoshiro256Stream rng(42);
  double acc = 0.0;
  for (auto _ : state) {
    for (int i = 0; i < 1024; ++i) acc += rng.next();
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_GaussianDraws);

void BM_ExactCovarianceAll(benchmark::State& state) {
  const grf::GridSpec grid = square_grid(state.range(0));
  const grf::PolyDecayDensity density(1.0, 1, 1, 2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grf::exact_discrete_covariance_all(grid, density));
  }
}
BENCHMARK(BM_ExactCovarianceAll)->RangeMultiplier(4)->Range(16, 256);

}  // namespace

BENCHMARK_MAIN();
