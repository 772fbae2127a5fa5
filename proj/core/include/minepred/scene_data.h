// Trajectory preprocessing: decimation, gap splitting, windowing and
// dataset splitting.

#ifndef MINEPRED_SCENE_DATA_H_
#define MINEPRED_SCENE_DATA_H_

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "minepred/types.h"

namespace minepred {

// History/horizon layout of an Instance. Defaults: six 2 Hz history states
// and six future positions one second apart.
struct WindowConfig {
  std::size_t history_len = 6;  // k
  std::size_t horizon = 6;      // H
  double hist_hz = 2.0;
  double pred_dt = 1.0;  // s between future positions

  double hist_dt() const { return 1.0 / hist_hz; }
  // Number of history steps between consecutive future positions.
  std::size_t future_stride() const;
};

// Nominal sampling rate of a trajectory, estimated from its median step.
double EstimateRateHz(const Trajectory& traj);

// Keeps every (source_hz / target_hz)-th state starting with the first.
// Throws "incompatible rates" unless the ratio is a positive integer.
Trajectory Resample(const Trajectory& traj, double source_hz, double target_hz);
// As above with the source rate estimated from the timestamps.
Trajectory Resample(const Trajectory& traj, double target_hz);

// Splits wherever consecutive timestamps are more than 2x the nominal
// interval apart. Pieces keep the agent id with a "#n" suffix after the
// first.
std::vector<Trajectory> SplitAtGaps(const Trajectory& traj, double nominal_dt);

// Sliding windows with stride one history step. Windows whose future runs
// past the end of the trajectory are dropped. Instance ids start at
// first_id and count up.
std::vector<Instance> MakeInstances(const Trajectory& traj,
                                    const WindowConfig& cfg,
                                    std::shared_ptr<const SceneMap> map,
                                    std::size_t first_id = 0);

// Seeded shuffle followed by a largest-remainder cut; ties in the remainder
// go to the earlier set (train, then val, then test).
DatasetSplit SplitDataset(std::size_t n, std::uint64_t seed,
                          std::array<double, 3> ratios = {7.0, 1.5, 1.5});

// Set sizes for n items under largest-remainder rounding.
std::array<std::size_t, 3> SplitSizes(std::size_t n,
                                      std::array<double, 3> ratios);

}  // namespace minepred

#endif  // MINEPRED_SCENE_DATA_H_
