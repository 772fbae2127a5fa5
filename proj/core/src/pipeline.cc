#include "minepred/pipeline.h"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "minepred/geometry.h"
#include "minepred/log_io.h"
#include "minepred/rasterizer.h"

namespace minepred {

using nlohmann::json;

namespace {

// Cuts wherever the spacing is not the history interval, e.g. after
// decimating a log with a dropped sample.
std::vector<Trajectory> UniformRuns(const Trajectory& traj, double dt) {
  std::vector<Trajectory> runs;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (i == 0 || std::abs(traj.states[i].t - traj.states[i - 1].t - dt) > 1e-6) {
      runs.push_back({traj.agent_id, {}, traj.footprint});
      if (i > 0) runs.back().agent_id += "~" + std::to_string(runs.size() - 1);
    }
    runs.back().states.push_back(traj.states[i]);
  }
  return runs;
}

}  // namespace

Dataset BuildDataset(const std::vector<Trajectory>& trajectories, const SceneMap& map,
                     const DatasetOptions& options) {
  map.Validate();
  Dataset ds;
  ds.map = std::make_shared<const SceneMap>(map);
  ds.window = options.window;
  const std::size_t need = options.window.history_len +
                           options.window.horizon * options.window.future_stride();
  for (const Trajectory& traj : trajectories) {
    traj.Validate();
    if (traj.states.size() < 2) {
      ++ds.counts.dropped;
      continue;
    }
    const double rate = EstimateRateHz(traj);
    for (const Trajectory& piece : SplitAtGaps(traj, 1.0 / rate)) {
      ++ds.counts.trajectories;
      const Trajectory resampled = piece.states.size() < 2
                                       ? piece
                                       : Resample(piece, options.window.hist_hz);
      ds.counts.states += resampled.states.size();
      for (const Trajectory& run : UniformRuns(resampled, options.window.hist_dt())) {
        if (run.states.size() < need) {
          ++ds.counts.dropped;
          continue;
        }
        auto windows = MakeInstances(run, options.window, ds.map, ds.instances.size());
        ds.instances.insert(ds.instances.end(), std::make_move_iterator(windows.begin()),
                            std::make_move_iterator(windows.end()));
      }
    }
  }
  if (ds.instances.empty()) throw Error("no instances");
  ds.split = SplitDataset(ds.instances.size(), options.seed, options.split_ratios);
  return ds;
}

namespace {

json WindowToJson(const WindowConfig& w) {
  return {{"history_len", w.history_len},
          {"horizon", w.horizon},
          {"hist_hz", w.hist_hz},
          {"pred_dt", w.pred_dt}};
}

}  // namespace

void SaveDataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::filesystem::create_directories(dir);
  WriteMapJson(dir / "map.json", *dataset.map);
  WriteInstancesJsonl(dir / "instances.jsonl", dataset.instances);
  WriteSplitJson(dir / "split.json", dataset.split);
  json summary = {
      {"window", WindowToJson(dataset.window)},
      {"instances", dataset.instances.size()},
      {"trajectories", dataset.counts.trajectories},
      {"states", dataset.counts.states},
      {"dropped", dataset.counts.dropped},
      {"split", {{"train", dataset.split.train.size()},
                 {"val", dataset.split.val.size()},
                 {"test", dataset.split.test.size()}}},
  };
  std::ofstream out(dir / "summary.json");
  if (!out) throw Error("cannot write '" + (dir / "summary.json").string() + "'");
  out << summary.dump(2) << '\n';
}

Dataset LoadDataset(const std::filesystem::path& dir) {
  for (const char* name : {"map.json", "instances.jsonl", "split.json", "summary.json"}) {
    if (!std::filesystem::exists(dir / name)) {
      throw Error("dataset directory '" + dir.string() + "' is missing " + name);
    }
  }
  Dataset ds;
  ds.map = std::make_shared<const SceneMap>(ReadMapJson(dir / "map.json"));
  ds.instances = ReadInstancesJsonl(dir / "instances.jsonl", ds.map);
  ds.split = ReadSplitJson(dir / "split.json");
  std::ifstream in(dir / "summary.json");
  try {
    const json summary = json::parse(in);
    const json& w = summary.at("window");
    ds.window.history_len = w.at("history_len").get<std::size_t>();
    ds.window.horizon = w.at("horizon").get<std::size_t>();
    ds.window.hist_hz = w.at("hist_hz").get<double>();
    ds.window.pred_dt = w.at("pred_dt").get<double>();
    ds.counts.trajectories = summary.value("trajectories", std::size_t{0});
    ds.counts.states = summary.value("states", std::size_t{0});
    ds.counts.dropped = summary.value("dropped", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed " + (dir / "summary.json").string() + ": " + e.what());
  }
  for (const auto* set : {&ds.split.train, &ds.split.val, &ds.split.test}) {
    for (std::size_t i : *set) {
      if (i >= ds.instances.size()) throw Error("split references missing instance " + std::to_string(i));
    }
  }
  return ds;
}

std::vector<const Instance*> Select(const Dataset& dataset,
                                    const std::vector<std::size_t>& indices) {
  std::vector<const Instance*> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= dataset.instances.size()) throw Error("instance index " + std::to_string(i) + " out of range");
    out.push_back(&dataset.instances[i]);
  }
  return out;
}

std::vector<GroundTruth> GroundTruthOf(const std::vector<const Instance*>& instances) {
  std::vector<GroundTruth> out;
  out.reserve(instances.size());
  for (const Instance* inst : instances) out.push_back({inst->id, inst->future});
  return out;
}

Prediction PredictModel(const ModelParams& params, const Instance& instance) {
  const Raster raster = RenderInstance(instance, params.spec.raster);
  const AgentState& anchor = instance.anchor();
  const DecodedOutput out = Predict(params, raster, {anchor.v, anchor.a, anchor.omega});
  Prediction p;
  p.instance_id = instance.id;
  p.source = ModelTag(params.spec.modes);
  p.probs = out.modes.probs;
  for (const auto& mode : out.modes.trajectories) {
    std::vector<Vec2> world;
    world.reserve(mode.size());
    for (Vec2 q : mode) world.push_back(FromAgentFrame(q, anchor));
    p.modes.push_back(std::move(world));
  }
  return p;
}

Prediction PredictEkf(const Instance& instance, const EkfConfig& cfg, const WindowConfig& window) {
  Prediction p;
  p.instance_id = instance.id;
  p.source = "ekf";
  p.modes.push_back(EkfForecast(instance.history, cfg, window.horizon, window.pred_dt));
  p.probs = {1.0};
  return p;
}

std::string ModelTag(int modes) { return "model-M" + std::to_string(modes); }

}  // namespace minepred
