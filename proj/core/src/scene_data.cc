#include "minepred/scene_data.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minepred/geometry.h"
#include "minepred/rng.h"

namespace minepred {
namespace {

constexpr double kTimeTol = 1e-6;

// Returns round(ratio) when ratio is a positive integer within tolerance.
std::size_t IntegerRatio(double num, double den) {
  if (!(num > 0.0) || !(den > 0.0)) return 0;
  const double r = num / den;
  const double rounded = std::round(r);
  if (rounded < 1.0 || std::abs(r - rounded) > 1e-6 * rounded) return 0;
  return static_cast<std::size_t>(rounded);
}

}  // namespace

bool AgentState::finite() const {
  return std::isfinite(t) && std::isfinite(x) && std::isfinite(y) &&
         std::isfinite(theta) && std::isfinite(v) && std::isfinite(a) &&
         std::isfinite(omega);
}

void Footprint::Validate() const {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw Error("footprint dimensions must be positive");
  }
}

void Trajectory::Validate() const {
  if (states.empty()) throw Error("trajectory '" + agent_id + "' is empty");
  footprint.Validate();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const AgentState& s = states[i];
    if (!s.finite()) {
      throw Error("trajectory '" + agent_id + "' has a non-finite state");
    }
    if (!(s.theta > -std::numbers::pi && s.theta <= std::numbers::pi)) {
      throw Error("trajectory '" + agent_id + "' has an unwrapped heading");
    }
    if (i > 0 && !(s.t > states[i - 1].t)) {
      throw Error("trajectory '" + agent_id +
                  "' timestamps are not strictly increasing");
    }
  }
}

void SceneMap::Validate() const {
  auto check = [](const std::vector<Polygon>& layer, const char* name) {
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (!IsSimplePolygon(layer[i])) {
        throw Error(std::string(name) + " polygon " + std::to_string(i) +
                    " is not a simple polygon with >= 3 finite vertices");
      }
    }
  };
  check(drivable, "drivable");
  check(non_drivable, "non_drivable");
}

bool SceneMap::IsDrivable(Vec2 p) const {
  for (const Polygon& poly : non_drivable) {
    if (PointInPolygon(p, poly)) return false;
  }
  for (const Polygon& poly : drivable) {
    if (PointInPolygon(p, poly)) return true;
  }
  return false;
}

void Instance::Validate(std::size_t k, std::size_t horizon) const {
  if (history.size() != k) throw Error("instance history length != k");
  if (future.size() != horizon) throw Error("instance future length != H");
  if (!future_t.empty() && !(history.back().t < future_t.front())) {
    throw Error("instance future does not start after its history");
  }
}

std::size_t WindowConfig::future_stride() const {
  const std::size_t stride = IntegerRatio(pred_dt, hist_dt());
  if (stride == 0) {
    throw Error("prediction step must be a positive multiple of the history step");
  }
  return stride;
}

double EstimateRateHz(const Trajectory& traj) {
  if (traj.states.size() < 2) throw Error("cannot estimate rate of a single state");
  std::vector<double> dts;
  dts.reserve(traj.states.size() - 1);
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    dts.push_back(traj.states[i].t - traj.states[i - 1].t);
  }
  std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
  return 1.0 / dts[dts.size() / 2];
}

Trajectory Resample(const Trajectory& traj, double source_hz, double target_hz) {
  if (traj.states.empty()) throw Error("cannot resample an empty trajectory");
  const std::size_t ratio = IntegerRatio(source_hz, target_hz);
  if (ratio == 0) throw Error("incompatible rates");
  Trajectory out{traj.agent_id, {}, traj.footprint};
  out.states.reserve(traj.states.size() / ratio + 1);
  for (std::size_t i = 0; i < traj.states.size(); i += ratio) {
    out.states.push_back(traj.states[i]);
  }
  return out;
}

Trajectory Resample(const Trajectory& traj, double target_hz) {
  if (traj.states.empty()) throw Error("cannot resample an empty trajectory");
  if (traj.states.size() == 1) return traj;
  const double source_hz = EstimateRateHz(traj);
  // Snap to the nearest integer multiple of target when within tolerance so
  // jittered timestamps do not spuriously fail.
  const double ratio = source_hz / target_hz;
  if (std::abs(ratio - std::round(ratio)) > 1e-3 || std::round(ratio) < 1.0) {
    throw Error("incompatible rates");
  }
  return Resample(traj, std::round(ratio) * target_hz, target_hz);
}

std::vector<Trajectory> SplitAtGaps(const Trajectory& traj, double nominal_dt) {
  std::vector<Trajectory> pieces;
  if (traj.states.empty()) return pieces;
  pieces.push_back({traj.agent_id, {traj.states.front()}, traj.footprint});
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    if (traj.states[i].t - traj.states[i - 1].t > 2.0 * nominal_dt + kTimeTol) {
      pieces.push_back({traj.agent_id + "#" + std::to_string(pieces.size()),
                        {},
                        traj.footprint});
    }
    pieces.back().states.push_back(traj.states[i]);
  }
  return pieces;
}

std::vector<Instance> MakeInstances(const Trajectory& traj,
                                    const WindowConfig& cfg,
                                    std::shared_ptr<const SceneMap> map,
                                    std::size_t first_id) {
  std::vector<Instance> out;
  const std::size_t k = cfg.history_len;
  const std::size_t stride = cfg.future_stride();
  const std::size_t span_after = cfg.horizon * stride;
  const std::size_t n = traj.states.size();
  if (k == 0 || cfg.horizon == 0) throw Error("k and H must be positive");
  if (n < k + span_after) return out;

  for (std::size_t i = 1; i < n; ++i) {
    const double dt = traj.states[i].t - traj.states[i - 1].t;
    if (std::abs(dt - cfg.hist_dt()) > kTimeTol) {
      throw Error("trajectory '" + traj.agent_id +
                  "' is not uniformly sampled at the history rate");
    }
  }

  for (std::size_t anchor = k - 1; anchor + span_after < n; ++anchor) {
    Instance inst;
    inst.id = first_id + out.size();
    inst.agent_id = traj.agent_id;
    inst.history.assign(traj.states.begin() + (anchor + 1 - k),
                        traj.states.begin() + (anchor + 1));
    for (std::size_t h = 1; h <= cfg.horizon; ++h) {
      const AgentState& s = traj.states[anchor + h * stride];
      inst.future.push_back(s.position());
      inst.future_t.push_back(s.t);
    }
    inst.map = map;
    inst.footprint = traj.footprint;
    out.push_back(std::move(inst));
  }
  return out;
}

std::array<std::size_t, 3> SplitSizes(std::size_t n, std::array<double, 3> ratios) {
  const double total = ratios[0] + ratios[1] + ratios[2];
  if (!(total > 0.0) || ratios[0] < 0 || ratios[1] < 0 || ratios[2] < 0) {
    throw Error("split ratios must be non-negative with a positive sum");
  }
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double quota = static_cast<double>(n) * ratios[i] / total;
    // Guard against 699.9999999 style quotas.
    const double fl = std::floor(quota + 1e-9);
    sizes[i] = static_cast<std::size_t>(fl);
    remainder[i] = std::max(0.0, quota - fl);
    assigned += sizes[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b] + 1e-12; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++sizes[order[i % 3]];
  return sizes;
}

DatasetSplit SplitDataset(std::size_t n, std::uint64_t seed,
                          std::array<double, 3> ratios) {
  if (n < 3) throw Error("dataset split needs at least 3 instances");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng = Rng::Stream(seed, StreamId::kSplit);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(idx[i], idx[rng.UniformInt(i + 1)]);
  }
  const auto sizes = SplitSizes(n, ratios);
  DatasetSplit split;
  split.seed = seed;
  split.train.assign(idx.begin(), idx.begin() + sizes[0]);
  split.val.assign(idx.begin() + sizes[0], idx.begin() + sizes[0] + sizes[1]);
  split.test.assign(idx.begin() + sizes[0] + sizes[1], idx.end());
  return split;
}

}  // namespace minepred
