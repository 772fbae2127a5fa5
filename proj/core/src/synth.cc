#include "minepred/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "minepred/geometry.h"
#include "minepred/rng.h"

namespace minepred {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

struct Arm {
  Vec2 dir;   // outward unit vector
  Vec2 left;  // left normal of dir
  double half_width = 5.0;
  double length = 100.0;
};

// Signed jitter with magnitude in [lo, hi].
double SignedJitter(Rng& rng, double lo, double hi) {
  const double mag = rng.Uniform(lo, hi);
  return rng.Uniform() < 0.5 ? -mag : mag;
}

Polygon ArmPolygon(const Arm& arm, double mouth_radius) {
  const double s0 = mouth_radius - 1.0;
  const double s1 = mouth_radius + arm.length;
  const double h = arm.half_width;
  return {s0 * arm.dir - h * arm.left, s1 * arm.dir - h * arm.left,
          s1 * arm.dir + h * arm.left, s0 * arm.dir + h * arm.left};
}

// Arc-length parameterised polyline.
class Path {
 public:
  explicit Path(std::vector<Vec2> pts) {
    for (const Vec2& p : pts) {
      if (!pts_.empty() && (p - pts_.back()).norm() < 1e-9) continue;
      cum_.push_back(pts_.empty() ? 0.0 : cum_.back() + (p - pts_.back()).norm());
      pts_.push_back(p);
    }
  }

  double length() const { return cum_.back(); }

  Vec2 At(double s) const {
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cum_.begin(), 1)),
        pts_.size() - 1);
    const double seg = cum_[i] - cum_[i - 1];
    const double f = seg > 0.0 ? (s - cum_[i - 1]) / seg : 0.0;
    return pts_[i - 1] + f * (pts_[i] - pts_[i - 1]);
  }

  double Heading(double s) const {
    constexpr double kHalf = 0.5;
    const double lo = std::max(0.0, s - kHalf);
    const double hi = std::min(length(), s + kHalf);
    const Vec2 d = At(hi) - At(lo);
    return std::atan2(d.y, d.x);
  }

 private:
  std::vector<Vec2> pts_;
  std::vector<double> cum_;
};

// Accelerate (or brake) to a cruise speed, hold it, then change to the exit
// speed, all at constant |a|.
class SpeedProfile {
 public:
  SpeedProfile(double v0, double vc, double v1, double accel, double length)
      : v0_(v0), vc_(vc), v1_(v1), accel_(accel), length_(length) {
    auto phase_len = [&](double va, double vb) {
      return std::abs(vb * vb - va * va) / (2.0 * accel_);
    };
    if (phase_len(v0_, vc_) + phase_len(vc_, v1_) > 0.9 * length_) v1_ = vc_;
    if (phase_len(v0_, vc_) > 0.9 * length_) vc_ = v1_ = v0_;
    t1_ = std::abs(vc_ - v0_) / accel_;
    s1_ = 0.5 * (v0_ + vc_) * t1_;
    t3_ = std::abs(v1_ - vc_) / accel_;
    const double s3 = 0.5 * (vc_ + v1_) * t3_;
    s2_ = length_ - s1_ - s3;
    t2_ = s2_ / vc_;
  }

  double duration() const { return t1_ + t2_ + t3_; }

  // Arc length, speed and longitudinal acceleration at time t.
  void Eval(double t, double* s, double* v, double* a) const {
    if (t < t1_) {
      const double acc = vc_ >= v0_ ? accel_ : -accel_;
      *a = t1_ > 0.0 ? acc : 0.0;
      *v = v0_ + *a * t;
      *s = v0_ * t + 0.5 * *a * t * t;
    } else if (t < t1_ + t2_) {
      *a = 0.0;
      *v = vc_;
      *s = s1_ + vc_ * (t - t1_);
    } else {
      const double tau = t - t1_ - t2_;
      const double acc = v1_ >= vc_ ? accel_ : -accel_;
      *a = t3_ > 0.0 ? acc : 0.0;
      *v = vc_ + *a * tau;
      *s = s1_ + s2_ + vc_ * tau + 0.5 * *a * tau * tau;
    }
  }

 private:
  double v0_, vc_, v1_, accel_, length_;
  double t1_ = 0, t2_ = 0, t3_ = 0, s1_ = 0, s2_ = 0;
};

std::vector<double> ArmAngles(ScenarioKind kind, Rng& rng) {
  const double rot = rng.Uniform(-kPi, kPi);
  switch (kind) {
    case ScenarioKind::kStraight:
      return {rot, rot + kPi};
    case ScenarioKind::kTJunction:
      return {rot + 1.5 * kPi + SignedJitter(rng, 5 * kDeg, 20 * kDeg),
              rot + SignedJitter(rng, 5 * kDeg, 25 * kDeg),
              rot + kPi + SignedJitter(rng, 5 * kDeg, 25 * kDeg)};
    case ScenarioKind::kCrossroads: {
      std::vector<double> a;
      for (int i = 0; i < 4; ++i) {
        a.push_back(rot + i * 0.5 * kPi + SignedJitter(rng, 5 * kDeg, 20 * kDeg));
      }
      return a;
    }
  }
  throw Error("unknown scenario kind");
}

Polygon RockPolygon(Vec2 center, double radius, Rng& rng) {
  constexpr int kVerts = 7;
  Polygon poly;
  const double phase = rng.Uniform(0.0, 2.0 * kPi);
  for (int i = 0; i < kVerts; ++i) {
    const double ang = phase + 2.0 * kPi * i / kVerts;
    const double r = radius * rng.Uniform(0.7, 1.0);
    poly.push_back(center + r * Vec2{std::cos(ang), std::sin(ang)});
  }
  return poly;
}

}  // namespace

ScenarioKind ParseScenarioKind(std::string_view name) {
  if (name == "straight") return ScenarioKind::kStraight;
  if (name == "t_junction") return ScenarioKind::kTJunction;
  if (name == "crossroads") return ScenarioKind::kCrossroads;
  throw Error("unknown scenario kind '" + std::string(name) +
              "' (expected straight, t_junction or crossroads)");
}

std::string ScenarioKindName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kStraight:
      return "straight";
    case ScenarioKind::kTJunction:
      return "t_junction";
    case ScenarioKind::kCrossroads:
      return "crossroads";
  }
  return "unknown";
}

SynthScene SynthScenario(ScenarioKind kind, int n_agents, std::uint64_t seed,
                         const SynthOptions& options) {
  if (n_agents < 1) throw Error("n_agents must be >= 1");
  Rng geo = Rng::Stream(seed, StreamId::kScenario);

  SynthScene scene;
  scene.arm_angles = ArmAngles(kind, geo);
  std::vector<Arm> arms;
  const bool straight = kind == ScenarioKind::kStraight;
  const double straight_half = geo.Uniform(4.0, 7.5);
  for (double ang : scene.arm_angles) {
    Arm arm;
    arm.dir = {std::cos(ang), std::sin(ang)};
    arm.left = {-arm.dir.y, arm.dir.x};
    arm.half_width = straight ? straight_half : geo.Uniform(4.0, 7.5);
    arm.length = straight ? geo.Uniform(140.0, 160.0) : geo.Uniform(90.0, 130.0);
    arms.push_back(arm);
  }

  // Push the mouths out until no two arm corridors touch.
  double mouth = straight ? 3.0 : 6.0;
  for (bool clear = false; !clear; mouth += 1.0) {
    clear = true;
    for (std::size_t i = 0; i < arms.size() && clear; ++i) {
      for (std::size_t j = i + 1; j < arms.size() && clear; ++j) {
        if (!straight && PolygonsOverlap(ArmPolygon(arms[i], mouth),
                                         ArmPolygon(arms[j], mouth))) {
          clear = false;
        }
      }
    }
    if (clear) break;
  }

  std::vector<Vec2> hull_pts;
  for (const Arm& arm : arms) {
    hull_pts.push_back(mouth * arm.dir - arm.half_width * arm.left);
    hull_pts.push_back(mouth * arm.dir + arm.half_width * arm.left);
  }
  constexpr double kCoreRadius = 3.0;
  for (int i = 0; i < 8; ++i) {
    const double ang = i * kPi / 4.0;
    hull_pts.push_back(kCoreRadius * Vec2{std::cos(ang), std::sin(ang)});
  }
  const Polygon junction = ConvexHull(hull_pts);
  for (const Arm& arm : arms) scene.map.drivable.push_back(ArmPolygon(arm, mouth));
  scene.map.drivable.push_back(junction);

  // Rock patches in the wedges between consecutive arms.
  double hull_radius = 0.0;
  for (const Vec2& p : junction) hull_radius = std::max(hull_radius, p.norm());
  std::vector<double> sorted = scene.arm_angles;
  for (double& a : sorted) a = std::remainder(a, 2.0 * kPi);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double a0 = sorted[i];
    const double a1 = i + 1 < sorted.size() ? sorted[i + 1] : sorted[0] + 2.0 * kPi;
    const double bisector = 0.5 * (a0 + a1);
    const Vec2 dir{std::cos(bisector), std::sin(bisector)};
    for (int r = 0; r < 2; ++r) {
      const double radius = geo.Uniform(4.0, 8.0);
      double dist = hull_radius + radius + 3.0 + geo.Uniform(0.0, 15.0) + 30.0 * r;
      Polygon rock = RockPolygon(dist * dir, radius, geo);
      for (int tries = 0; tries < 40; ++tries) {
        const bool overlaps = std::any_of(
            scene.map.drivable.begin(), scene.map.drivable.end(),
            [&](const Polygon& d) { return PolygonsOverlap(rock, d); });
        if (!overlaps) break;
        for (Vec2& p : rock) p = p + 5.0 * dir;
      }
      scene.map.non_drivable.push_back(std::move(rock));
    }
  }
  scene.map.origin.note = "synthetic " + ScenarioKindName(kind) +
                          " scene, seed " + std::to_string(seed) +
                          ", origin at junction centre";

  Rng agents = Rng::Stream(seed, StreamId::kAgents);
  const double dt = 1.0 / options.sample_hz;
  for (int n = 0; n < n_agents; ++n) {
    Rng rng = agents.Fork(static_cast<std::uint64_t>(n));
    Route route;
    switch (kind) {
      case ScenarioKind::kStraight:
        route.entry_arm = static_cast<int>(rng.UniformInt(2));
        route.exit_arm = 1 - route.entry_arm;
        break;
      case ScenarioKind::kTJunction:
        route.entry_arm = 0;
        route.exit_arm = 1 + static_cast<int>(rng.UniformInt(2));
        break;
      case ScenarioKind::kCrossroads:
        route.entry_arm = static_cast<int>(rng.UniformInt(4));
        route.exit_arm = (route.entry_arm + 1 + static_cast<int>(rng.UniformInt(3))) % 4;
        break;
    }
    const Arm& in = arms[route.entry_arm];
    const Arm& out = arms[route.exit_arm];

    // Keep right: inbound right is +left of the outward arm direction,
    // outbound right is -left.
    const double off_in = rng.Uniform(0.2, 0.5) * in.half_width;
    const double off_out = rng.Uniform(0.2, 0.5) * out.half_width;
    const double jitter_amp = rng.Uniform(0.0, 0.3);
    const double jitter_len = rng.Uniform(25.0, 60.0);
    const double jitter_phase = rng.Uniform(0.0, 2.0 * kPi);
    auto jitter = [&](double s) {
      const double taper = std::clamp((s - mouth) / 10.0, 0.0, 1.0);
      return taper * jitter_amp * std::sin(2.0 * kPi * s / jitter_len + jitter_phase);
    };

    std::vector<Vec2> pts;
    const double far_in = mouth + in.length - 5.0;
    for (double s = far_in; s > mouth; s -= 0.5) {
      pts.push_back(s * in.dir + (off_in + jitter(s)) * in.left);
    }
    const Vec2 p0 = mouth * in.dir + off_in * in.left;
    const Vec2 p2 = mouth * out.dir - off_out * out.left;
    Vec2 p1;
    if (straight) {
      p1 = 0.5 * (p0 + p2);
    } else {
      p1 = 0.5 * (off_in * in.left - off_out * out.left);
      if (p1.norm() > kCoreRadius) p1 = (kCoreRadius / p1.norm()) * p1;
    }
    constexpr int kCurveSamples = 200;
    for (int i = 0; i <= kCurveSamples; ++i) {
      const double u = static_cast<double>(i) / kCurveSamples;
      pts.push_back((1 - u) * (1 - u) * p0 + 2 * (1 - u) * u * p1 + u * u * p2);
    }
    const double far_out = mouth + out.length - 5.0;
    for (double s = mouth + 0.5; s <= far_out; s += 0.5) {
      pts.push_back(s * out.dir - (off_out + jitter(s)) * out.left);
    }
    const Path path(std::move(pts));

    const SpeedProfile profile(rng.Uniform(options.min_speed, options.max_speed),
                               rng.Uniform(options.min_speed, options.max_speed),
                               rng.Uniform(options.min_speed, options.max_speed),
                               rng.Uniform(0.8, 1.5), path.length());

    Trajectory traj;
    char id[32];
    std::snprintf(id, sizeof(id), "agent_%03d", n);
    traj.agent_id = id;
    traj.footprint = rng.Uniform() < options.truck_fraction ? Footprint::MiningTruck()
                                                             : Footprint::Pickup();
    const long start_tick = static_cast<long>(rng.UniformInt(300));
    const double duration = profile.duration();
    for (long i = 0;; ++i) {
      const double tau = i * dt;
      if (tau > duration) break;
      double s, v, a;
      profile.Eval(tau, &s, &v, &a);
      AgentState st;
      st.t = (start_tick + i) * dt;
      const Vec2 p = path.At(s);
      st.x = p.x;
      st.y = p.y;
      st.theta = WrapAngle(path.Heading(s));
      st.v = v;
      st.a = a;
      constexpr double kDs = 0.5;
      const double dtheta =
          WrapAngle(path.Heading(s + kDs) - path.Heading(s - kDs));
      const double span = std::min(path.length(), s + kDs) - std::max(0.0, s - kDs);
      st.omega = span > 0.0 ? v * dtheta / span : 0.0;
      traj.states.push_back(st);
    }
    scene.trajectories.push_back(std::move(traj));
    scene.routes.push_back(route);
  }
  return scene;
}

}  // namespace minepred
