// Closed-form kinematic process models: constant velocity (CV), constant
// acceleration (CA), constant turn rate and velocity (CTRV) and constant
// turn rate and acceleration (CTRA).
//
// State layout is [x, y, theta, v, a, omega]. CV and CA keep heading fixed
// and carry a/omega through unchanged; CV also ignores a. Below
// |omega| < kSmallTurnRate the turning models switch to their first-order
// Taylor expansion in omega, which avoids the v/omega cancellation and is
// continuous with the exact flow to O(omega^2).

#ifndef MINEPRED_KINEMATICS_H_
#define MINEPRED_KINEMATICS_H_

#include <array>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "minepred/types.h"

namespace minepred {

using StateVector = Eigen::Matrix<double, 6, 1>;
using StateMatrix = Eigen::Matrix<double, 6, 6>;

inline constexpr double kSmallTurnRate = 1e-6;

enum class MotionModel { kCV, kCA, kCTRV, kCTRA };

MotionModel ParseMotionModel(std::string_view name);
std::string MotionModelName(MotionModel model);

struct KinematicState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double a = 0.0;
  double omega = 0.0;

  static KinematicState FromAgent(const AgentState& s) {
    return {s.x, s.y, s.theta, s.v, s.a, s.omega};
  }
  static KinematicState FromVector(const StateVector& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  StateVector ToVector() const {
    StateVector out;
    out << x, y, theta, v, a, omega;
    return out;
  }
};

// Advances the state by dt > 0 seconds; heading is wrapped to (-pi, pi].
KinematicState Step(MotionModel model, const KinematicState& s, double dt);

// Analytic Jacobian of Step with respect to the state, evaluated at s.
StateMatrix StepJacobian(MotionModel model, const KinematicState& s, double dt);

}  // namespace minepred

#endif  // MINEPRED_KINEMATICS_H_
