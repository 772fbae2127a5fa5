// Seeded synthetic mine-road scenes for desk-scale experiments.
//
// A scene is a set of straight corridor arms (8-15 m wide) meeting at an
// irregular junction, plus a few non-drivable rock patches between the arms.
// Agents drive a jittered path keeping to the right of the centreline,
// enter on one arm, pick an exit arm uniformly at random, and follow a
// trapezoidal speed profile between 3 and 12 m/s. Samples are emitted at
// 10 Hz.

#ifndef MINEPRED_SYNTH_H_
#define MINEPRED_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "minepred/types.h"

namespace minepred {

enum class ScenarioKind { kStraight, kTJunction, kCrossroads };

ScenarioKind ParseScenarioKind(std::string_view name);
std::string ScenarioKindName(ScenarioKind kind);

struct Route {
  int entry_arm = 0;
  int exit_arm = 0;
};

struct SynthOptions {
  double sample_hz = 10.0;
  double min_speed = 3.0;
  double max_speed = 12.0;
  double truck_fraction = 0.3;
};

struct SynthScene {
  SceneMap map;
  std::vector<Trajectory> trajectories;
  std::vector<Route> routes;  // parallel to trajectories
  std::vector<double> arm_angles;  // outward direction of each arm, rad
};

// Straight corridors have two arms; agents enter at either end. T-junction
// agents always enter on the stem (arm 0) and take one of the two branches.
// Crossroads agents enter on any of four arms and leave on any other.
SynthScene SynthScenario(ScenarioKind kind, int n_agents, std::uint64_t seed,
                         const SynthOptions& options = {});

}  // namespace minepred

#endif  // MINEPRED_SYNTH_H_
