#include "minepred/kinematics.h"

#include <array>
#include <cmath>
#include <complex>

namespace minepred {
namespace {

// Position increment and its partials for the turning models. `accel` is 0
// for CTRV.
struct TurnIncrement {
  double dx, dy;
  double dx_dv, dy_dv;
  double dx_da, dy_da;
  double dx_dw, dy_dw;
};

// g_n(z) = integral over s in [0, 1] of s^n exp(z s), for n = 0, 1, 2.
// Power series near zero, upward recurrence elsewhere; both stay accurate
// where the textbook closed forms lose digits to 1/omega^2 cancellation.
std::array<std::complex<double>, 3> PhiIntegrals(std::complex<double> z) {
  std::array<std::complex<double>, 3> g{};
  if (std::abs(z) < 1.0) {
    std::complex<double> term = 1.0;  // z^k / k!
    for (int k = 0; k < 30; ++k) {
      for (int n = 0; n < 3; ++n) g[n] += term / double(n + k + 1);
      term *= z / double(k + 1);
    }
    return g;
  }
  const std::complex<double> ez = std::exp(z);
  g[0] = (ez - 1.0) / z;
  g[1] = (ez - g[0]) / z;
  g[2] = (ez - 2.0 * g[1]) / z;
  return g;
}

TurnIncrement Turn(double theta, double v, double accel, double w, double t) {
  const double s0 = std::sin(theta), c0 = std::cos(theta);
  TurnIncrement r;
  if (std::abs(w) < kSmallTurnRate) {
    const double p = v * t + 0.5 * accel * t * t;
    const double q = 0.5 * v * t * t + accel * t * t * t / 3.0;
    r.dx = p * c0 - w * q * s0;
    r.dy = p * s0 + w * q * c0;
    r.dx_dv = t * c0 - w * 0.5 * t * t * s0;
    r.dy_dv = t * s0 + w * 0.5 * t * t * c0;
    r.dx_da = 0.5 * t * t * c0 - w * t * t * t / 3.0 * s0;
    r.dy_da = 0.5 * t * t * s0 + w * t * t * t / 3.0 * c0;
    r.dx_dw = -q * s0;
    r.dy_dw = q * c0;
    return r;
  }
  // The increment is e^{i theta} * integral of (v + a tau) e^{i w tau}
  // over [0, t], written in terms of g_n(i w t).
  const std::complex<double> rot(c0, s0);
  const auto g = PhiIntegrals({0.0, w * t});
  const std::complex<double> d = rot * (v * t * g[0] + accel * t * t * g[1]);
  const std::complex<double> d_dv = rot * t * g[0];
  const std::complex<double> d_da = rot * t * t * g[1];
  const std::complex<double> d_dw =
      rot * std::complex<double>(0.0, 1.0) * (v * t * t * g[1] + accel * t * t * t * g[2]);
  r.dx = d.real();
  r.dy = d.imag();
  r.dx_dv = d_dv.real();
  r.dy_dv = d_dv.imag();
  r.dx_da = d_da.real();
  r.dy_da = d_da.imag();
  r.dx_dw = d_dw.real();
  r.dy_dw = d_dw.imag();
  return r;
}

}  // namespace

MotionModel ParseMotionModel(std::string_view name) {
  if (name == "cv" || name == "CV") return MotionModel::kCV;
  if (name == "ca" || name == "CA") return MotionModel::kCA;
  if (name == "ctrv" || name == "CTRV") return MotionModel::kCTRV;
  if (name == "ctra" || name == "CTRA") return MotionModel::kCTRA;
  throw Error("unknown motion model '" + std::string(name) + "'");
}

std::string MotionModelName(MotionModel model) {
  switch (model) {
    case MotionModel::kCV:
      return "CV";
    case MotionModel::kCA:
      return "CA";
    case MotionModel::kCTRV:
      return "CTRV";
    case MotionModel::kCTRA:
      return "CTRA";
  }
  return "?";
}

KinematicState Step(MotionModel model, const KinematicState& s, double dt) {
  KinematicState out = s;
  switch (model) {
    case MotionModel::kCV:
      out.x += s.v * std::cos(s.theta) * dt;
      out.y += s.v * std::sin(s.theta) * dt;
      break;
    case MotionModel::kCA: {
      const double dist = (s.v + 0.5 * s.a * dt) * dt;
      out.x += dist * std::cos(s.theta);
      out.y += dist * std::sin(s.theta);
      out.v += s.a * dt;
      break;
    }
    case MotionModel::kCTRV:
    case MotionModel::kCTRA: {
      const double accel = model == MotionModel::kCTRA ? s.a : 0.0;
      const TurnIncrement inc = Turn(s.theta, s.v, accel, s.omega, dt);
      out.x += inc.dx;
      out.y += inc.dy;
      out.theta = s.theta + s.omega * dt;
      out.v += accel * dt;
      break;
    }
  }
  out.theta = WrapAngle(out.theta);
  return out;
}

StateMatrix StepJacobian(MotionModel model, const KinematicState& s, double dt) {
  StateMatrix f = StateMatrix::Identity();
  const double c0 = std::cos(s.theta), s0 = std::sin(s.theta);
  switch (model) {
    case MotionModel::kCV:
      f(0, 2) = -s.v * s0 * dt;
      f(1, 2) = s.v * c0 * dt;
      f(0, 3) = c0 * dt;
      f(1, 3) = s0 * dt;
      break;
    case MotionModel::kCA: {
      const double dist = (s.v + 0.5 * s.a * dt) * dt;
      f(0, 2) = -dist * s0;
      f(1, 2) = dist * c0;
      f(0, 3) = c0 * dt;
      f(1, 3) = s0 * dt;
      f(0, 4) = 0.5 * dt * dt * c0;
      f(1, 4) = 0.5 * dt * dt * s0;
      f(3, 4) = dt;
      break;
    }
    case MotionModel::kCTRV:
    case MotionModel::kCTRA: {
      const bool accel_on = model == MotionModel::kCTRA;
      const TurnIncrement inc = Turn(s.theta, s.v, accel_on ? s.a : 0.0, s.omega, dt);
      f(0, 2) = -inc.dy;
      f(1, 2) = inc.dx;
      f(0, 3) = inc.dx_dv;
      f(1, 3) = inc.dy_dv;
      if (accel_on) {
        f(0, 4) = inc.dx_da;
        f(1, 4) = inc.dy_da;
        f(3, 4) = dt;
      }
      f(0, 5) = inc.dx_dw;
      f(1, 5) = inc.dy_dw;
      f(2, 5) = dt;
      break;
    }
  }
  return f;
}

}  // namespace minepred
