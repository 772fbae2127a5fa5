// Displacement metrics and the drivable-area feasibility filter.

#ifndef MINEPRED_METRICS_H_
#define MINEPRED_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "minepred/types.h"

namespace minepred {

// World-frame forecast for one instance.
struct Prediction {
  std::size_t instance_id = 0;
  std::string source;  // "ekf", "model-M1", "model-M5", ...
  std::vector<std::vector<Vec2>> modes;
  std::vector<double> probs;
  // Filled by FeasibilityFilter; empty means "not checked".
  std::vector<bool> feasible;
  bool all_infeasible = false;

  // |modes| >= 1, equal-length non-empty modes, probs on the simplex.
  void Validate() const;
};

double MinAde(const Prediction& pred, std::span<const Vec2> gt);
double MinFde(const Prediction& pred, std::span<const Vec2> gt);

enum class MissCriterion {
  kFinalStep,  // min over modes of the final displacement exceeds threshold
  kAnyStep,    // every mode has some step farther than threshold
};

inline constexpr double kDefaultMissThreshold = 2.0;  // m

bool IsMiss(const Prediction& pred, std::span<const Vec2> gt, double threshold,
            MissCriterion criterion = MissCriterion::kFinalStep);

double MissRate(std::span<const Prediction> preds, std::span<const std::vector<Vec2>> gts,
                double threshold = kDefaultMissThreshold,
                MissCriterion criterion = MissCriterion::kFinalStep);

// True when every position lies in drivable space.
bool IsFeasible(std::span<const Vec2> mode, const SceneMap& map);

// Zeroes the probability of every mode with a position in non-drivable space
// and renormalizes the rest. When no mode is feasible the probabilities are
// left untouched and all_infeasible is set.
Prediction FeasibilityFilter(const Prediction& pred, const SceneMap& map);

}  // namespace minepred

#endif  // MINEPRED_METRICS_H_
