// Glue between the stages: dataset construction and persistence, and the
// per-instance predictors used by evaluation.

#ifndef MINEPRED_PIPELINE_H_
#define MINEPRED_PIPELINE_H_

#include <array>
#include <filesystem>
#include <memory>
#include <vector>

#include "minepred/ekf.h"
#include "minepred/metrics.h"
#include "minepred/model.h"
#include "minepred/report.h"
#include "minepred/scene_data.h"
#include "minepred/types.h"

namespace minepred {

struct DatasetOptions {
  WindowConfig window;
  std::array<double, 3> split_ratios{7.0, 1.5, 1.5};
  std::uint64_t seed = 0;
};

struct DatasetCounts {
  std::size_t trajectories = 0;  // after gap splitting
  std::size_t states = 0;        // after resampling
  std::size_t dropped = 0;       // pieces too short for one window
};

struct Dataset {
  std::shared_ptr<const SceneMap> map;
  std::vector<Instance> instances;
  DatasetSplit split;
  WindowConfig window;
  DatasetCounts counts;
};

// Gap split -> resample to the history rate -> window -> split. Throws
// "no instances" when no trajectory is long enough.
Dataset BuildDataset(const std::vector<Trajectory>& trajectories, const SceneMap& map,
                     const DatasetOptions& options);

// Directory layout: map.json, instances.jsonl, split.json, summary.json.
void SaveDataset(const std::filesystem::path& dir, const Dataset& dataset);
Dataset LoadDataset(const std::filesystem::path& dir);

std::vector<const Instance*> Select(const Dataset& dataset,
                                    const std::vector<std::size_t>& indices);
std::vector<GroundTruth> GroundTruthOf(const std::vector<const Instance*>& instances);

// Model forecast mapped back to the world frame.
Prediction PredictModel(const ModelParams& params, const Instance& instance);
// Single-mode EKF forecast with probability 1.
Prediction PredictEkf(const Instance& instance, const EkfConfig& cfg, const WindowConfig& window);

std::string ModelTag(int modes);

}  // namespace minepred

#endif  // MINEPRED_PIPELINE_H_
