#include <benchmark/benchmark.h>

#include "minepred/pipeline.h"
#include "minepred/rasterizer.h"
#include "minepred/synth.h"

namespace minepred {
namespace {

const Dataset& Junction() {
  static const Dataset ds = [] {
    const SynthScene scene = SynthScenario(ScenarioKind::kCrossroads, 4, 1);
    return BuildDataset(scene.trajectories, scene.map, DatasetOptions{});
  }();
  return ds;
}

void BM_RenderInstance(benchmark::State& state, RasterConfig cfg) {
  const Dataset& ds = Junction();
  std::size_t i = 0;
  for (auto _ : state) {
    Raster r = RenderInstance(ds.instances[i++ % ds.instances.size()], cfg);
    benchmark::DoNotOptimize(r.image.data.data());
  }
  state.counters["px"] = cfg.size_px * cfg.size_px;
}
BENCHMARK_CAPTURE(BM_RenderInstance, full, RasterConfig::Full())->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_RenderInstance, train, RasterConfig::Train())->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_RenderInstance, compact, RasterConfig::Compact())->Unit(benchmark::kMicrosecond);

void BM_FillPolygon(benchmark::State& state) {
  RgbImage img(1200, 1200);
  const std::vector<PixelCoord> poly = {{100.3, 90.7}, {1100.2, 200.1}, {950.6, 1150.4}, {80.9, 700.2}};
  for (auto _ : state) {
    FillPolygon(img, poly, {255, 255, 255});
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_FillPolygon)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace minepred

BENCHMARK_MAIN();
