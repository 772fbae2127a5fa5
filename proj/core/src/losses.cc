#include "minepred/losses.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minepred {
namespace {

constexpr double kDegenerate = 1e-6;

double AngleBetween(Vec2 a, Vec2 b) {
  return std::abs(std::atan2(a.cross(b), a.dot(b)));
}

// Adds d(ADE)/d(pred) scaled by `weight` into grad (x/y interleaved).
void AddAdeGradient(std::span<const Vec2> pred, std::span<const Vec2> gt, double weight,
                    double* grad) {
  const double inv_h = 1.0 / static_cast<double>(pred.size());
  for (std::size_t h = 0; h < pred.size(); ++h) {
    const Vec2 d = pred[h] - gt[h];
    const double n = d.norm();
    if (n == 0.0) continue;
    grad[2 * h] += weight * inv_h * d.x / n;
    grad[2 * h + 1] += weight * inv_h * d.y / n;
  }
}

}  // namespace

LossKind ParseLossKind(std::string_view name) {
  if (name == "best-mode" || name == "best_mode") return LossKind::kBestMode;
  if (name == "mixture-of-experts" || name == "me") return LossKind::kMixtureOfExperts;
  throw Error("unknown loss kind '" + std::string(name) + "'");
}

std::string LossKindName(LossKind kind) {
  return kind == LossKind::kBestMode ? "best-mode" : "mixture-of-experts";
}

void LossConfig::Validate() const {
  if (!(alpha >= 0.0)) throw Error("alpha must be >= 0");
  if (!(angle_threshold > 0.0 && angle_threshold <= std::numbers::pi)) {
    throw Error("angle threshold must be in (0, pi]");
  }
  if (modes < 1) throw Error("mode count must be >= 1");
}

double AdeLoss(std::span<const Vec2> pred, std::span<const Vec2> gt) {
  if (pred.size() != gt.size()) {
    throw Error("trajectory length mismatch: " + std::to_string(pred.size()) + " vs " +
                std::to_string(gt.size()));
  }
  if (pred.empty()) throw Error("trajectories must have at least one step");
  double sum = 0.0;
  for (std::size_t h = 0; h < pred.size(); ++h) sum += (pred[h] - gt[h]).norm();
  return sum / static_cast<double>(pred.size());
}

std::size_t SelectBestMode(const std::vector<std::vector<Vec2>>& modes,
                           std::span<const Vec2> gt, double threshold, Vec2 origin) {
  if (modes.empty()) throw Error("at least one mode is required");
  if (gt.empty()) throw Error("ground truth must have at least one step");
  std::vector<double> ade(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) ade[m] = AdeLoss(modes[m], gt);

  auto argmin = [](const std::vector<double>& v, const std::vector<bool>* mask) {
    std::size_t best = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask != nullptr && !(*mask)[i]) continue;
      if (best == v.size() || v[i] < v[best]) best = i;
    }
    return best;
  };

  const Vec2 gt_dir = gt.back() - origin;
  if (gt_dir.norm() < kDegenerate) return argmin(ade, nullptr);

  std::vector<double> angle(modes.size());
  std::vector<bool> gated(modes.size());
  bool any = false;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const Vec2 dir = modes[m].back() - origin;
    angle[m] = dir.norm() < kDegenerate ? std::numbers::pi : AngleBetween(dir, gt_dir);
    gated[m] = angle[m] <= threshold;
    any = any || gated[m];
  }
  return any ? argmin(ade, &gated) : argmin(angle, nullptr);
}

LossResult TotalLoss(const ModeSet& modes, std::span<const double> logits,
                     std::span<const Vec2> gt, const LossConfig& cfg) {
  const std::size_t m_count = modes.modes();
  if (m_count == 0 || logits.size() != m_count || modes.probs.size() != m_count) {
    throw Error("mode set, probabilities and logits must have matching sizes");
  }
  const std::size_t h = gt.size();
  LossResult r;
  r.d_coords.assign(m_count * h * 2, 0.0);
  r.d_logits.assign(m_count, 0.0);

  if (cfg.kind == LossKind::kBestMode) {
    const std::size_t best = SelectBestMode(modes.trajectories, gt, cfg.angle_threshold);
    r.best_mode = best;
    // -log softmax(z)[best] = logsumexp(z) - z[best]
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double z : logits) sum += std::exp(z - mx);
    double nll = mx + std::log(sum) - logits[best];
    const double cap = -std::log(kProbabilityFloor);
    const bool clamped = nll > cap;
    if (clamped) nll = cap;
    const double ade = AdeLoss(modes.trajectories[best], gt);
    r.value = nll + cfg.alpha * ade;
    if (!clamped) {
      for (std::size_t m = 0; m < m_count; ++m) {
        r.d_logits[m] = modes.probs[m] - (m == best ? 1.0 : 0.0);
      }
    }
    AddAdeGradient(modes.trajectories[best], gt, cfg.alpha, &r.d_coords[best * h * 2]);
    return r;
  }

  std::vector<double> ade(m_count);
  double total = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    ade[m] = AdeLoss(modes.trajectories[m], gt);
    total += modes.probs[m] * ade[m];
  }
  r.value = total;
  r.best_mode = static_cast<std::size_t>(std::min_element(ade.begin(), ade.end()) - ade.begin());
  for (std::size_t m = 0; m < m_count; ++m) {
    r.d_logits[m] = modes.probs[m] * (ade[m] - total);
    AddAdeGradient(modes.trajectories[m], gt, modes.probs[m], &r.d_coords[m * h * 2]);
  }
  return r;
}

}  // namespace minepred
