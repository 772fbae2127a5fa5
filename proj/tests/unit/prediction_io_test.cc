#include "minepred/prediction_io.h"

#include <sstream>

#include <gtest/gtest.h>

#include "minepred/rng.h"
#include "oracles.h"
#include "test_util.h"

namespace minepred {
namespace {

using ::minepred::testing::TempDir;
using ::minepred::testing::WriteFile;

TEST(PredictionIoTest, RoundTripIsExact) {
  Rng rng = Rng::Stream(3, 0);
  std::vector<Prediction> preds;
  for (int i = 0; i < 20; ++i) {
    Prediction p = ::minepred::testing::RandomPrediction(rng, 1 + i % 5, 6, 30.0);
    p.instance_id = 100 + i;
    if (i % 3 == 0) {
      p.feasible.assign(p.modes.size(), true);
      p.feasible[0] = false;
      p.all_infeasible = p.modes.size() == 1;
    }
    preds.push_back(p);
  }
  TempDir dir;
  WritePredictions(dir / "p.jsonl", preds);
  const auto back = ReadPredictions(dir / "p.jsonl");
  ASSERT_EQ(back.size(), preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    EXPECT_EQ(back[i].instance_id, preds[i].instance_id);
    EXPECT_EQ(back[i].source, preds[i].source);
    EXPECT_EQ(back[i].modes, preds[i].modes);
    EXPECT_EQ(back[i].probs, preds[i].probs);
    EXPECT_EQ(back[i].feasible, preds[i].feasible);
    EXPECT_EQ(back[i].all_infeasible, preds[i].all_infeasible);
  }
}

TEST(PredictionIoTest, RecordShape) {
  Prediction p;
  p.instance_id = 3;
  p.source = "ekf";
  p.modes = {{{1, 2}, {3, 4}}};
  p.probs = {1.0};
  EXPECT_EQ(PredictionToJson(p),
            R"({"id":3,"modes":[[[1.0,2.0],[3.0,4.0]]],"probs":[1.0],"source":"ekf"})");
}

TEST(PredictionIoTest, BadLinesNameTheirLineNumber) {
  TempDir dir;
  WriteFile(dir / "bad.jsonl",
            R"({"id":1,"source":"ekf","modes":[[[0,0]]],"probs":[1.0]})"
            "\n"
            R"({"id":2,"source":"ekf","modes":[[[0,0]]],"probs":[0.5]})"
            "\n");
  try {
    ReadPredictions(dir / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(PredictionFromJson("{"), Error);
  EXPECT_THROW(PredictionFromJson(R"({"id":1})"), Error);
  EXPECT_THROW(ReadPredictions(dir / "missing.jsonl"), Error);
}

}  // namespace
}  // namespace minepred
