#include "minepred/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minepred/losses.h"

namespace minepred {

void Prediction::Validate() const {
  const std::string who = "prediction for instance " + std::to_string(instance_id);
  if (modes.empty()) throw Error(who + " has no modes");
  if (probs.size() != modes.size()) throw Error(who + " has mismatched probs");
  const std::size_t h = modes.front().size();
  if (h == 0) throw Error(who + " has empty modes");
  double sum = 0.0;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (modes[m].size() != h) throw Error(who + " has modes of different lengths");
    if (!(probs[m] >= 0.0) || !std::isfinite(probs[m])) {
      throw Error(who + " has an invalid probability");
    }
    sum += probs[m];
  }
  if (std::abs(sum - 1.0) > 1e-6) throw Error(who + " probabilities do not sum to 1");
  if (!feasible.empty() && feasible.size() != modes.size()) {
    throw Error(who + " has mismatched feasibility flags");
  }
}

namespace {

void CheckLengths(const Prediction& pred, std::span<const Vec2> gt) {
  if (pred.modes.empty()) throw Error("prediction has no modes");
  for (const auto& mode : pred.modes) {
    if (mode.size() != gt.size() || gt.empty()) {
      throw Error("prediction length " + std::to_string(mode.size()) +
                  " does not match ground truth length " + std::to_string(gt.size()));
    }
  }
}

}  // namespace

double MinAde(const Prediction& pred, std::span<const Vec2> gt) {
  CheckLengths(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : pred.modes) best = std::min(best, AdeLoss(mode, gt));
  return best;
}

double MinFde(const Prediction& pred, std::span<const Vec2> gt) {
  CheckLengths(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mode : pred.modes) best = std::min(best, (mode.back() - gt.back()).norm());
  return best;
}

bool IsMiss(const Prediction& pred, std::span<const Vec2> gt, double threshold,
            MissCriterion criterion) {
  if (criterion == MissCriterion::kFinalStep) return MinFde(pred, gt) > threshold;
  CheckLengths(pred, gt);
  for (const auto& mode : pred.modes) {
    double worst = 0.0;
    for (std::size_t h = 0; h < gt.size(); ++h) worst = std::max(worst, (mode[h] - gt[h]).norm());
    if (worst <= threshold) return false;
  }
  return true;
}

double MissRate(std::span<const Prediction> preds, std::span<const std::vector<Vec2>> gts,
                double threshold, MissCriterion criterion) {
  if (preds.empty()) throw Error("miss rate of an empty prediction set");
  if (preds.size() != gts.size()) throw Error("prediction and ground-truth counts differ");
  std::size_t misses = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (IsMiss(preds[i], gts[i], threshold, criterion)) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(preds.size());
}

bool IsFeasible(std::span<const Vec2> mode, const SceneMap& map) {
  return std::all_of(mode.begin(), mode.end(), [&](Vec2 p) { return map.IsDrivable(p); });
}

Prediction FeasibilityFilter(const Prediction& pred, const SceneMap& map) {
  Prediction out = pred;
  out.feasible.assign(pred.modes.size(), false);
  double kept = 0.0;
  bool any = false;
  bool removes_mass = false;
  for (std::size_t m = 0; m < pred.modes.size(); ++m) {
    out.feasible[m] = IsFeasible(pred.modes[m], map);
    if (out.feasible[m]) {
      any = true;
      kept += pred.probs[m];
    } else if (pred.probs[m] != 0.0) {
      removes_mass = true;
    }
  }
  out.all_infeasible = !any;
  // Nothing to move: leaving the values alone keeps the filter exactly
  // idempotent instead of renormalizing by a sum that is 1 up to rounding.
  if (!any || (!removes_mass && kept > 0.0)) return out;
  if (kept <= 0.0) {
    // Every feasible mode had zero prior mass; spread evenly over them.
    const double n = static_cast<double>(std::count(out.feasible.begin(), out.feasible.end(), true));
    for (std::size_t m = 0; m < out.probs.size(); ++m) out.probs[m] = out.feasible[m] ? 1.0 / n : 0.0;
    return out;
  }
  for (std::size_t m = 0; m < out.probs.size(); ++m) {
    out.probs[m] = out.feasible[m] ? pred.probs[m] / kept : 0.0;
  }
  return out;
}

}  // namespace minepred
