#include "minepred/metrics.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "minepred/losses.h"
#include "minepred/rng.h"
#include "oracles.h"

namespace minepred {
namespace {

using namespace ::minepred::testing;

std::vector<Vec2> Line(int h, double y = 0.0) {
  std::vector<Vec2> t;
  for (int i = 1; i <= h; ++i) t.push_back({double(i), y});
  return t;
}

Prediction Pred(std::vector<std::vector<Vec2>> modes, std::vector<double> probs) {
  Prediction p;
  p.modes = std::move(modes);
  p.probs = std::move(probs);
  return p;
}

SceneMap Corridor() {
  SceneMap map;
  map.drivable.push_back({{-10, -3}, {100, -3}, {100, 3}, {-10, 3}});
  map.non_drivable.push_back({{40, -3}, {50, -3}, {50, -1}, {40, -1}});
  return map;
}

TEST(MetricsTest, Examples) {
  const auto gt = Line(6);
  const Prediction p = Pred({Line(6, 1.0), Line(6, 3.0)}, {0.5, 0.5});
  EXPECT_DOUBLE_EQ(MinAde(p, gt), 1.0);
  EXPECT_DOUBLE_EQ(MinFde(p, gt), 1.0);
  EXPECT_FALSE(IsMiss(p, gt, 2.0));
  EXPECT_TRUE(IsMiss(p, gt, 0.5));
  // Exactly on the threshold is not a miss.
  EXPECT_FALSE(IsMiss(p, gt, 1.0));
  const Prediction far = Pred({Line(6, 2.5)}, {1.0});
  const std::vector<Prediction> preds = {p, far};
  const std::vector<std::vector<Vec2>> gts = {gt, gt};
  EXPECT_DOUBLE_EQ(MissRate(preds, gts), 0.5);
}

TEST(MetricsTest, DocumentedExamples) {
  const auto gt = Line(6);
  // Mode ADEs 2.0, 1.5, 3.0.
  const Prediction p = Pred({Line(6, 2.0), Line(6, -1.5), Line(6, 3.0)}, {0.2, 0.3, 0.5});
  EXPECT_DOUBLE_EQ(MinAde(p, gt), 1.5);
  const Prediction single = Pred({Line(6, 0.7)}, {1.0});
  EXPECT_DOUBLE_EQ(MinAde(single, gt), AdeLoss(single.modes[0], gt));
  // A single EKF mode ending 5.485 m off.
  auto ekf = Line(6);
  ekf.back().y += 5.485;
  EXPECT_NEAR(MinFde(Pred({ekf}, {1.0}), gt), 5.485, 1e-12);
  auto off = Line(6);
  off.back() = off.back() + Vec2{3.0, 4.0};
  EXPECT_DOUBLE_EQ(MinFde(Pred({off, Line(6, 9.0)}, {0.5, 0.5}), gt), 5.0);
  auto exact_end = Line(6, 4.0);
  exact_end.back() = gt.back();
  EXPECT_EQ(MinFde(Pred({Line(6, 1.0), exact_end}, {0.5, 0.5}), gt), 0.0);
  // minFDE 1.9 and 2.1 at threshold 2.0.
  const std::vector<Prediction> two = {Pred({Line(6, 1.9)}, {1.0}), Pred({Line(6, 2.1)}, {1.0})};
  const std::vector<std::vector<Vec2>> gts = {gt, gt};
  EXPECT_DOUBLE_EQ(MissRate(two, gts, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(MissRate(two, gts, std::numeric_limits<double>::infinity()), 0.0);
  const std::vector<Prediction> perfect = {Pred({gt}, {1.0}), Pred({gt}, {1.0})};
  EXPECT_DOUBLE_EQ(MissRate(perfect, gts, 2.0), 0.0);
}

TEST(MetricsTest, MissRateIsNonIncreasingInThreshold) {
  Rng rng = Rng::Stream(104, 0);
  std::vector<Prediction> preds;
  std::vector<std::vector<Vec2>> gts;
  for (int i = 0; i < 300; ++i) {
    preds.push_back(RandomPrediction(rng, 3, 6, 5.0));
    gts.push_back(RandomPath(rng, 6, 5.0));
  }
  double prev = 1.0;
  for (double thr = 0.0; thr < 40.0; thr += 0.25) {
    const double r = MissRate(preds, gts, thr);
    EXPECT_LE(r, prev);
    EXPECT_GE(r, 0.0);
    prev = r;
  }
}

TEST(MetricsTest, AnyStepCriterion) {
  const auto gt = Line(6);
  auto wobble = Line(6);
  wobble[2].y = 3.0;  // far in the middle, exact at the end
  const Prediction p = Pred({wobble}, {1.0});
  EXPECT_FALSE(IsMiss(p, gt, 2.0, MissCriterion::kFinalStep));
  EXPECT_TRUE(IsMiss(p, gt, 2.0, MissCriterion::kAnyStep));
  const Prediction q = Pred({wobble, Line(6, 0.5)}, {0.5, 0.5});
  EXPECT_FALSE(IsMiss(q, gt, 2.0, MissCriterion::kAnyStep));
}

TEST(MetricsTest, ErrorCases) {
  const Prediction p = Pred({Line(6)}, {1.0});
  EXPECT_THROW(MinAde(p, Line(5)), Error);
  EXPECT_THROW(MinFde(p, Line(7)), Error);
  EXPECT_THROW(MissRate({}, {}), Error);
  const std::vector<Prediction> one = {p};
  EXPECT_THROW(MissRate(one, {}), Error);
  EXPECT_THROW(Pred({}, {}).Validate(), Error);
  EXPECT_THROW(Pred({Line(6)}, {0.9}).Validate(), Error);
  EXPECT_THROW(Pred({Line(6), Line(5)}, {0.5, 0.5}).Validate(), Error);
  EXPECT_NO_THROW(p.Validate());
}

TEST(MetricsTest, MatchBruteForceOracle) {
  Rng rng = Rng::Stream(101, 0);
  std::vector<Prediction> preds;
  std::vector<std::vector<Vec2>> gts;
  for (int i = 0; i < 1000; ++i) {
    const int h = 1 + static_cast<int>(rng.UniformInt(12));
    const int m = 1 + static_cast<int>(rng.UniformInt(6));
    const double scale = std::pow(10.0, rng.Uniform(-2, 3));
    preds.push_back(RandomPrediction(rng, m, h, scale));
    gts.push_back(RandomPath(rng, h, scale));
    const Prediction& p = preds.back();
    const auto& g = gts.back();
    EXPECT_NEAR(AdeLoss(p.modes[0], g), OracleAde(p.modes[0], g), 1e-9 * (1 + scale));
    EXPECT_NEAR(MinAde(p, g), OracleMinAde(p, g), 1e-9 * (1 + scale));
    EXPECT_NEAR(MinFde(p, g), OracleMinFde(p, g), 1e-9 * (1 + scale));
  }
  for (double thr : {0.1, 2.0, 50.0}) {
    EXPECT_NEAR(MissRate(preds, gts, thr), OracleMissRate(preds, gts, thr), 1e-9);
  }
}

TEST(MetricsTest, MinimaBoundEachMode) {
  Rng rng = Rng::Stream(102, 0);
  for (int i = 0; i < 200; ++i) {
    const Prediction p = RandomPrediction(rng, 4, 6, 10);
    const auto g = RandomPath(rng, 6, 10);
    for (const auto& m : p.modes) {
      EXPECT_LE(MinAde(p, g), AdeLoss(m, g));
    }
    // Adding a mode can only help.
    Prediction more = p;
    more.modes.push_back(g);
    more.probs.push_back(0.0);
    EXPECT_EQ(MinAde(more, g), 0.0);
  }
}

TEST(FeasibilityTest, IsFeasible) {
  const SceneMap map = Corridor();
  EXPECT_TRUE(IsFeasible(Line(6), map));
  std::vector<Vec2> through_pit;
  for (int i = 0; i < 6; ++i) through_pit.push_back({38.0 + 2 * i, -2.0});
  EXPECT_FALSE(IsFeasible(through_pit, map));
  EXPECT_FALSE(IsFeasible(Line(6, 5.0), map));
}

TEST(FeasibilityTest, ZeroesInfeasibleAndRenormalizes) {
  const SceneMap map = Corridor();
  const Prediction p = Pred({Line(6), Line(6, 5.0), Line(6, 1.0)}, {0.2, 0.5, 0.3});
  const Prediction f = FeasibilityFilter(p, map);
  EXPECT_EQ(f.probs[1], 0.0);
  EXPECT_NEAR(f.probs[0], 0.4, 1e-12);
  EXPECT_NEAR(f.probs[2], 0.6, 1e-12);
  EXPECT_EQ(f.feasible, (std::vector<bool>{true, false, true}));
  EXPECT_FALSE(f.all_infeasible);
  EXPECT_EQ(f.modes, p.modes);
}

TEST(FeasibilityTest, DocumentedExamples) {
  const SceneMap map = Corridor();
  std::vector<Vec2> through_pit;
  for (int i = 0; i < 6; ++i) through_pit.push_back({38.0 + 2 * i, -2.0});
  const Prediction f = FeasibilityFilter(Pred({Line(6), through_pit}, {0.6, 0.4}), map);
  EXPECT_EQ(f.probs, (std::vector<double>{1.0, 0.0}));
  const Prediction inside = Pred({Line(6), Line(6, 1.0)}, {0.35, 0.65});
  EXPECT_EQ(FeasibilityFilter(inside, map).probs, inside.probs);
}

TEST(FeasibilityTest, AllInfeasibleKeepsProbabilities) {
  const SceneMap map = Corridor();
  const Prediction p = Pred({Line(6, 5.0), Line(6, -5.0)}, {0.7, 0.3});
  const Prediction f = FeasibilityFilter(p, map);
  EXPECT_TRUE(f.all_infeasible);
  EXPECT_EQ(f.probs, p.probs);
}

TEST(FeasibilityTest, ZeroMassSurvivorsShareUniformly) {
  const SceneMap map = Corridor();
  const Prediction p = Pred({Line(6), Line(6, 5.0), Line(6, 1.0)}, {0.0, 1.0, 0.0});
  const Prediction f = FeasibilityFilter(p, map);
  EXPECT_EQ(f.probs, (std::vector<double>{0.5, 0.0, 0.5}));
}

TEST(FeasibilityTest, PropertiesOnRandomPredictions) {
  const SceneMap map = Corridor();
  Rng rng = Rng::Stream(103, 0);
  for (int i = 0; i < 500; ++i) {
    Prediction p = RandomPrediction(rng, 1 + static_cast<int>(rng.UniformInt(5)), 6, 4.0);
    for (auto& m : p.modes) {
      for (Vec2& v : m) v.x += 45.0;  // straddle the pit
    }
    const Prediction f = FeasibilityFilter(p, map);
    ASSERT_EQ(f.feasible.size(), p.modes.size());
    EXPECT_NEAR(std::accumulate(f.probs.begin(), f.probs.end(), 0.0), 1.0, 1e-6);
    if (!f.all_infeasible) {
      for (std::size_t m = 0; m < f.probs.size(); ++m) {
        if (!f.feasible[m]) {
          EXPECT_EQ(f.probs[m], 0.0);
        }
        EXPECT_GE(f.probs[m], 0.0);
      }
    }
    const Prediction twice = FeasibilityFilter(f, map);
    EXPECT_EQ(twice.probs, f.probs);
    EXPECT_EQ(twice.feasible, f.feasible);
    // Probabilities never enter the distance metrics.
    const auto g = RandomPath(rng, 6, 4.0);
    EXPECT_EQ(MinAde(f, g), MinAde(p, g));
  }
}

}  // namespace
}  // namespace minepred
