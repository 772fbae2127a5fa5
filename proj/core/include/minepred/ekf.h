// Extended Kalman filter over the kinematic process models, and the
// filter-then-extrapolate forecaster used as the physics baseline.

#ifndef MINEPRED_EKF_H_
#define MINEPRED_EKF_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "minepred/kinematics.h"
#include "minepred/types.h"

namespace minepred {

struct Gaussian {
  StateVector mean = StateVector::Zero();
  StateMatrix cov = StateMatrix::Identity();

  // Symmetric within 1e-9 and no eigenvalue below -1e-9.
  bool IsValid() const;
};

// Process noise is white with per-component spectral density q, so the
// discrete noise over dt is diag(q) * dt.
struct ProcessModel {
  MotionModel kind = MotionModel::kCTRV;
  std::array<double, 6> q{0.05, 0.05, 0.01, 0.5, 1.0, 0.05};

  StateMatrix NoiseCovariance(double dt) const;
};

// Mean through Step, covariance F P F^T + Q. Throws "filter divergence"
// when the result is not positive semidefinite within tolerance.
Gaussian EkfPredict(const ProcessModel& model, const Gaussian& g, double dt);

// Position-only measurement z = [x, y] with noise covariance r. Uses the
// Joseph form, then symmetrizes and clamps tiny negative eigenvalues.
Gaussian EkfUpdate(const Gaussian& g, Vec2 z, const Eigen::Matrix2d& r);

struct EkfConfig {
  ProcessModel model;
  // Initial standard deviations of [x, y, theta, v, a, omega].
  std::array<double, 6> initial_std{0.5, 0.5, 0.1, 1.0, 1.0, 0.1};
  Eigen::Matrix2d obs_noise = 0.09 * Eigen::Matrix2d::Identity();
};

// Initialises from the first history state, filters the remaining states as
// position observations, then rolls the mean forward `horizon` steps of
// pred_dt. Needs at least two history states.
std::vector<Vec2> EkfForecast(std::span<const AgentState> history, const EkfConfig& cfg,
                              std::size_t horizon, double pred_dt);

}  // namespace minepred

#endif  // MINEPRED_EKF_H_
