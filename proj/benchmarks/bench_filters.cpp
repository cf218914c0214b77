#include <benchmark/benchmark.h>

#include "speckle/gamma.hpp"
#include "speckle/lee_filter.hpp"
#include "speckle/protocol.hpp"
#include "speckle/stochastic_filter.hpp"

namespace {

using namespace speckle;

Raster noisy_phantom(int size) {
  const PhantomGeometry geom = default_geometry(size);
  RandomStream stream(1);
  return corrupt(make_phantom(geom, situation(2)), situation(2), stream);
}

void BM_StochasticFilter(benchmark::State& state) {
  const Raster img = noisy_phantom(static_cast<int>(state.range(0)));
  const FilterSpec spec(static_cast<int>(state.range(1)), TestConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(filter_image(img, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_StochasticFilter)->Args({64, 5})->Args({128, 5})->Args({128, 7})->Unit(benchmark::kMillisecond);

void BM_LeeFilter(benchmark::State& state) {
  const Raster img = noisy_phantom(static_cast<int>(state.range(0)));
  const LeeSpec spec{static_cast<int>(state.range(1)), 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(lee_filter(img, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_LeeFilter)->Args({128, 5})->Args({128, 7})->Unit(benchmark::kMillisecond);

void BM_Mle(benchmark::State& state) {
  RandomStream stream(2);
  const PixelSample s = sample(GammaParams(3.0, 195.0), static_cast<std::size_t>(state.range(0)), stream);
  for (auto _ : state) benchmark::DoNotOptimize(mle(s));
}
BENCHMARK(BM_Mle)->Arg(9)->Arg(25)->Arg(10000);

void BM_ProtocolReplicate(benchmark::State& state) {
  RunPlan plan = RunPlan::fast();
  plan.replicates = 1;
  plan.situations = {2};
  for (auto _ : state) benchmark::DoNotOptimize(run_protocol(plan));
}
BENCHMARK(BM_ProtocolReplicate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
