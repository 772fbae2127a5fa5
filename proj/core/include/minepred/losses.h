// Displacement loss, best-mode selection and the two multimodal training
// objectives.

#ifndef MINEPRED_LOSSES_H_
#define MINEPRED_LOSSES_H_

#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minepred/model.h"
#include "minepred/types.h"

namespace minepred {

enum class LossKind {
  kBestMode,           // -log p[m*] + alpha * ADE(m*)
  kMixtureOfExperts,   // sum_m p[m] * ADE(m)
};

LossKind ParseLossKind(std::string_view name);
std::string LossKindName(LossKind kind);

struct LossConfig {
  double alpha = 1.0;
  double angle_threshold = std::numbers::pi / 4.0;  // rad
  int modes = 5;
  LossKind kind = LossKind::kBestMode;

  void Validate() const;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Mean Euclidean distance over matching steps. Throws on length mismatch or
// empty input.
double AdeLoss(std::span<const Vec2> pred, std::span<const Vec2> gt);

// Two-stage rule: among modes whose final displacement (from `origin`)
// points within `threshold` radians of the ground truth's, the lowest-ADE
// mode wins; when none qualifies, the mode with the smallest angle wins.
// Ties go to the lowest index. A ground truth whose final displacement is
// under 1e-6 m has no direction, so the rule reduces to plain min-ADE; a
// mode with such a short displacement is treated as pointing the wrong way.
std::size_t SelectBestMode(const std::vector<std::vector<Vec2>>& modes,
                           std::span<const Vec2> gt, double threshold,
                           Vec2 origin = {0.0, 0.0});

struct LossResult {
  double value = 0.0;
  std::size_t best_mode = 0;
  // d(value)/d(coordinate), mode-major then step then x/y.
  std::vector<double> d_coords;
  std::vector<double> d_logits;
};

// `logits` must correspond to modes.probs. The classification term is
// computed as a log-softmax and clamped at -log(kProbabilityFloor).
LossResult TotalLoss(const ModeSet& modes, std::span<const double> logits,
                     std::span<const Vec2> gt, const LossConfig& cfg);

}  // namespace minepred

#endif  // MINEPRED_LOSSES_H_
