#include "minepred/model.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "grad_check.h"
#include "minepred/pipeline.h"
#include "minepred/synth.h"
#include "minepred/trainer.h"

namespace minepred {
namespace {

using ::minepred::testing::CheckGradients;
using ::minepred::testing::ModelLoss;

ModelSpec SmallSpec(int h = 6, int m = 3) {
  ModelSpec spec;
  spec.horizon = h;
  spec.modes = m;
  spec.channels = {4, 6, 8};
  spec.hidden = 12;
  spec.raster = RasterConfig::Compact();
  return spec;
}

// A rendered instance from a turning synthetic scene.
TrainSample SceneSample(const RasterConfig& cfg, int which = 40) {
  const SynthScene scene = SynthScenario(ScenarioKind::kCrossroads, 6, 21);
  const Dataset ds = BuildDataset(scene.trajectories, scene.map, DatasetOptions{});
  return MakeSample(ds.instances.at(which % ds.instances.size()), cfg);
}

TEST(ModelSpecTest, OutputSizeIsTwoHPlusOneTimesM) {
  ModelSpec spec;
  EXPECT_EQ(spec.output_size(), 65);
  for (int h : {6, 12}) {
    for (int m : {1, 2, 3, 5}) {
      spec.horizon = h;
      spec.modes = m;
      EXPECT_EQ(spec.output_size(), (2 * h + 1) * m);
      EXPECT_EQ(spec.coord_count(), 2 * h * m);
    }
  }
}

TEST(ModelSpecTest, TrainRasterGivesThirtyByThirtyFeatures) {
  ModelSpec spec;
  EXPECT_EQ(spec.feature_map_side(), 30);
  EXPECT_NE(spec.Descriptor().find("conv3x3s2:32->64@30x30"), std::string::npos)
      << spec.Descriptor();
  spec.raster = RasterConfig::Full();
  EXPECT_EQ(spec.feature_map_side(), 150);
}

TEST(ModelSpecTest, ValidateRejectsNonsense) {
  ModelSpec spec;
  spec.modes = 0;
  EXPECT_THROW(spec.Validate(), Error);
  spec = ModelSpec{};
  spec.channels.clear();
  EXPECT_THROW(spec.Validate(), Error);
  spec = ModelSpec{};
  spec.coord_scale = 0;
  EXPECT_THROW(spec.Validate(), Error);
}

TEST(SoftmaxTest, SimplexAndShiftInvariance) {
  Rng rng = Rng::Stream(1, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> logits(1 + trial % 7);
    for (double& l : logits) l = rng.Uniform(-50, 50);
    const auto p = Softmax(logits);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (double v : p) EXPECT_GE(v, 0.0);
    std::vector<double> shifted = logits;
    for (double& l : shifted) l += 700.0;
    const auto q = Softmax(shifted);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], q[i], 1e-6);
    EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(),
              std::max_element(q.begin(), q.end()) - q.begin());
  }
  const auto equal = Softmax(std::vector<double>(5, 0.3));
  for (double v : equal) EXPECT_DOUBLE_EQ(v, 0.2);
}

TEST(ForwardTest, ShapesAndProbabilities) {
  for (int h : {6, 12}) {
    for (int m : {1, 2, 3, 5}) {
      const ModelParams p = InitParams(SmallSpec(h, m), 3);
      const TrainSample s = SceneSample(p.spec.raster);
      const auto raw = Forward(p, s.raster, s.motion);
      ASSERT_EQ(static_cast<int>(raw.size()), (2 * h + 1) * m);
      const DecodedOutput out = DecodeOutput<float>(p.spec, raw);
      EXPECT_EQ(out.modes.modes(), std::size_t(m));
      for (const auto& t : out.modes.trajectories) EXPECT_EQ(t.size(), std::size_t(h));
      EXPECT_NEAR(std::accumulate(out.modes.probs.begin(), out.modes.probs.end(), 0.0), 1.0,
                  1e-6);
    }
  }
}

TEST(ForwardTest, DeterministicAndInitialOutputsNearOrigin) {
  const ModelParams p = InitParams(ModelSpec{}, 11);
  const ModelParams q = InitParams(ModelSpec{}, 11);
  const TrainSample s = SceneSample(p.spec.raster);
  const auto a = Forward(p, s.raster, s.motion);
  EXPECT_EQ(a, Forward(q, s.raster, s.motion));
  EXPECT_NE(a, Forward(InitParams(ModelSpec{}, 12), s.raster, s.motion));
  const DecodedOutput out = DecodeOutput<float>(p.spec, a);
  for (const auto& t : out.modes.trajectories) {
    for (Vec2 v : t) EXPECT_LT(v.norm(), 5.0);
  }
}

TEST(ForwardTest, RejectsWrongRasterSize) {
  const ModelParams p = InitParams(SmallSpec(), 1);
  EXPECT_THROW(Forward(p, RgbImage(81, 80), MotionInput{}), Error);
  EXPECT_THROW(Forward(p, RgbImage(240, 240), MotionInput{}), Error);
}

TEST(ForwardTest, PredictRefusesMismatchedRasterConfig) {
  const ModelParams p = InitParams(SmallSpec(), 1);
  Raster r;
  r.image = RgbImage(80, 80);
  r.config = RasterConfig::Compact();
  EXPECT_NO_THROW(Predict(p, r, MotionInput{}));
  r.config.fade_delta = 0.2;
  EXPECT_THROW(Predict(p, r, MotionInput{}), Error);
}

// A constant image gives constant feature maps; the pooled features must not
// depend on where the (identical) values sit, so permuting pixels of a
// uniform-per-channel image changes nothing.
TEST(ForwardTest, PoolingIgnoresSpatialPermutation) {
  const ModelParams p = InitParams(SmallSpec(), 2);
  RgbImage img(80, 80);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = 200;
    img.data[i + 1] = 40;
    img.data[i + 2] = 90;
  }
  const auto a = Forward(p, img, {3, 0, 0.1});
  RgbImage flipped = img;
  for (int r = 0; r < 80; ++r) {
    for (int c = 0; c < 80; ++c) {
      std::copy_n(img.PixelFromBottom(c, r), 3, flipped.PixelFromBottom(79 - c, 79 - r));
    }
  }
  EXPECT_EQ(a, Forward(p, flipped, {3, 0, 0.1}));
}

TEST(BackwardTest, ZeroOutputGradientGivesZeroGradients) {
  const ModelParams p = InitParams(SmallSpec(), 4);
  const TrainSample s = SceneSample(p.spec.raster);
  ForwardCache<float> cache;
  Forward(p, s.raster, s.motion, &cache);
  ModelParams g = p.ZerosLike();
  const std::vector<float> zero(p.spec.output_size(), 0.0f);
  Backward<float>(p, cache, zero, g);
  for (std::size_t i = 0; i < g.size(); ++i) ASSERT_EQ(g.at(i), 0.0f);
}

TEST(BackwardTest, ResultsDoNotDependOnBufferAddresses) {
  const ModelParams p = InitParams(SmallSpec(), 4);
  const TrainSample s = SceneSample(p.spec.raster);
  std::vector<float> d_out(p.spec.output_size());
  for (std::size_t i = 0; i < d_out.size(); ++i) d_out[i] = 0.01f * float(i % 7) - 0.03f;
  std::vector<float> first_raw;
  std::vector<float> first_grad;
  // Odd-sized live allocations move every later buffer to a new heap offset.
  std::vector<std::vector<float>> pads;
  for (int trial = 0; trial < 8; ++trial) {
    pads.emplace_back(std::size_t(1 + 3 * trial));
    ForwardCache<float> cache;
    const auto raw = Forward(p, s.raster, s.motion, &cache);
    ModelParams g = p.ZerosLike();
    Backward<float>(p, cache, d_out, g);
    std::vector<float> grad(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) grad[i] = g.at(i);
    if (trial == 0) {
      first_raw = raw;
      first_grad = grad;
      continue;
    }
    ASSERT_EQ(raw, first_raw) << "trial " << trial;
    ASSERT_EQ(grad, first_grad) << "trial " << trial;
  }
}

TEST(BackwardTest, RequiresAForwardPass) {
  const ModelParams p = InitParams(SmallSpec(), 4);
  ForwardCache<float> cache;
  ModelParams g = p.ZerosLike();
  const std::vector<float> d(p.spec.output_size(), 1.0f);
  EXPECT_THROW(Backward<float>(p, cache, d, g), Error);
}

TEST(BackwardTest, MatchesFiniteDifferencesInDouble) {
  BasicParams<double> p = InitParams(SmallSpec(), 5).Cast<double>();
  ::minepred::testing::JitterBiases(p, 5);
  const TrainSample s = SceneSample(p.spec.raster);
  LossConfig lcfg;
  lcfg.modes = p.spec.modes;
  const auto r = CheckGradients(p, s, lcfg, 150, 1e-6, 1e-3, 7);
  EXPECT_LT(r.worst_relative, 1e-5) << "param " << r.worst_index << " analytic "
                                    << r.worst_analytic << " numeric " << r.worst_numeric;
}

TEST(BackwardTest, MatchesFiniteDifferencesInFloat) {
  ModelParams p = InitParams(SmallSpec(), 5);
  ::minepred::testing::JitterBiases(p, 5);
  const TrainSample s = SceneSample(p.spec.raster);
  LossConfig lcfg;
  lcfg.modes = p.spec.modes;
  const auto r = CheckGradients(p, s, lcfg, 150, 1e-3, 1e-2, 8);
  EXPECT_LT(r.worst_relative, 1e-2) << "param " << r.worst_index << " analytic "
                                    << r.worst_analytic << " numeric " << r.worst_numeric;
}

TEST(BackwardTest, MixtureOfExpertsLossGradient) {
  BasicParams<double> p = InitParams(SmallSpec(), 6).Cast<double>();
  ::minepred::testing::JitterBiases(p, 6);
  const TrainSample s = SceneSample(p.spec.raster, 7);
  LossConfig lcfg;
  lcfg.modes = p.spec.modes;
  lcfg.kind = LossKind::kMixtureOfExperts;
  const auto r = CheckGradients(p, s, lcfg, 80, 1e-6, 1e-3, 9);
  EXPECT_LT(r.worst_relative, 1e-5);
}

TEST(ParamsTest, FlatAccessAndArithmetic) {
  ModelParams p = InitParams(SmallSpec(), 1);
  std::size_t total = 0;
  for (const auto& b : p.blobs) total += b.data.size();
  EXPECT_EQ(p.size(), total);
  EXPECT_EQ(p.blobs.front().name, "conv0.weight");
  EXPECT_EQ(&p.at(p.blobs[0].data.size()), &p.blobs[1].data[0]);
  ModelParams q = p;
  q.AddScaled(p, -1.0f);
  for (std::size_t i = 0; i < q.size(); ++i) ASSERT_EQ(q.at(i), 0.0f);
  EXPECT_TRUE(q.AllFinite());
  q.at(3) = std::nanf("");
  EXPECT_FALSE(q.AllFinite());
  // Biases start at zero; the output layer is scaled down.
  for (const auto& b : p.blobs) {
    if (b.name.ends_with(".bias")) {
      for (float v : b.data) EXPECT_EQ(v, 0.0f);
    }
  }
}

}  // namespace
}  // namespace minepred
