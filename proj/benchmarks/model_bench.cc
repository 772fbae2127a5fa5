#include <benchmark/benchmark.h>

#include "minepred/model.h"
#include "minepred/rasterizer.h"
#include "minepred/trainer.h"

namespace minepred {
namespace {

ModelSpec Spec(const RasterConfig& raster, int modes) {
  ModelSpec spec;
  spec.raster = raster;
  spec.modes = modes;
  return spec;
}

RgbImage Pattern(int n) {
  RgbImage img(n, n);
  for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<std::uint8_t>(i * 37 % 251);
  return img;
}

void BM_Forward(benchmark::State& state, RasterConfig raster) {
  const ModelParams params = InitParams(Spec(raster, 5), 1);
  const RgbImage img = Pattern(raster.size_px);
  for (auto _ : state) {
    auto raw = Forward(params, img, {6.0, 0.2, 0.1});
    benchmark::DoNotOptimize(raw.data());
  }
}
BENCHMARK_CAPTURE(BM_Forward, train, RasterConfig::Train())->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Forward, compact, RasterConfig::Compact())->Unit(benchmark::kMicrosecond);

// One training sample: forward, loss, backward.
void BM_ForwardBackward(benchmark::State& state, RasterConfig raster) {
  const ModelParams params = InitParams(Spec(raster, 5), 1);
  TrainSample sample;
  sample.raster = Pattern(raster.size_px);
  sample.motion = {6.0, 0.2, 0.1};
  for (int i = 1; i <= 6; ++i) sample.target.push_back({6.0 * i, 0.3 * i});
  LossConfig lcfg;
  ModelParams grads = params.ZerosLike();
  for (auto _ : state) {
    benchmark::DoNotOptimize(AccumulateSample(params, sample, lcfg, &grads));
  }
}
BENCHMARK_CAPTURE(BM_ForwardBackward, train, RasterConfig::Train())->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_ForwardBackward, compact, RasterConfig::Compact())
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace minepred

BENCHMARK_MAIN();
