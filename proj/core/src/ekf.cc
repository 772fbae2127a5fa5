#include "minepred/ekf.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace minepred {
namespace {

constexpr double kSymTol = 1e-9;
constexpr double kPsdTol = 1e-9;

double MinEigenvalue(const StateMatrix& m) {
  Eigen::SelfAdjointEigenSolver<StateMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

// Symmetrize, then clamp eigenvalues that are negative only by round-off.
StateMatrix Condition(const StateMatrix& p) {
  StateMatrix sym = 0.5 * (p + p.transpose());
  Eigen::SelfAdjointEigenSolver<StateMatrix> solver(sym);
  const auto& eig = solver.eigenvalues();
  if (eig(0) < -kPsdTol) throw Error("filter divergence");
  if (eig(0) >= 0.0) return sym;
  const StateVector clamped = eig.cwiseMax(0.0);
  sym = solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().transpose();
  return 0.5 * (sym + sym.transpose());
}

}  // namespace

bool Gaussian::IsValid() const {
  if (!mean.allFinite() || !cov.allFinite()) return false;
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymTol) return false;
  return MinEigenvalue(0.5 * (cov + cov.transpose())) >= -kPsdTol;
}

StateMatrix ProcessModel::NoiseCovariance(double dt) const {
  StateMatrix q_mat = StateMatrix::Zero();
  for (int i = 0; i < 6; ++i) {
    if (q[i] < 0.0) throw Error("process noise densities must be non-negative");
    q_mat(i, i) = q[i] * dt;
  }
  return q_mat;
}

Gaussian EkfPredict(const ProcessModel& model, const Gaussian& g, double dt) {
  if (!(dt > 0.0)) throw Error("prediction step must be positive");
  const KinematicState s = KinematicState::FromVector(g.mean);
  const StateMatrix f = StepJacobian(model.kind, s, dt);
  Gaussian out;
  out.mean = Step(model.kind, s, dt).ToVector();
  out.cov = f * g.cov * f.transpose() + model.NoiseCovariance(dt);
  if (!out.mean.allFinite() || !out.cov.allFinite()) throw Error("filter divergence");
  out.cov = Condition(out.cov);
  return out;
}

Gaussian EkfUpdate(const Gaussian& g, Vec2 z, const Eigen::Matrix2d& r) {
  if ((r - r.transpose()).cwiseAbs().maxCoeff() > kSymTol) {
    throw Error("observation noise must be symmetric");
  }
  Eigen::Matrix<double, 2, 6> h = Eigen::Matrix<double, 2, 6>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::Matrix2d s = h * g.cov * h.transpose() + r;
  const Eigen::LLT<Eigen::Matrix2d> llt(s);
  if (llt.info() != Eigen::Success || !(s.determinant() > 0.0)) {
    throw Error("singular innovation covariance");
  }
  const Eigen::Matrix<double, 6, 2> k = llt.solve(h * g.cov).transpose();
  const Eigen::Vector2d innovation(z.x - g.mean(0), z.y - g.mean(1));

  Gaussian out;
  out.mean = g.mean + k * innovation;
  out.mean(2) = WrapAngle(out.mean(2));
  const StateMatrix i_kh = StateMatrix::Identity() - k * h;
  out.cov = i_kh * g.cov * i_kh.transpose() + k * r * k.transpose();
  out.cov = Condition(out.cov);
  return out;
}

std::vector<Vec2> EkfForecast(std::span<const AgentState> history, const EkfConfig& cfg,
                              std::size_t horizon, double pred_dt) {
  if (history.size() < 2) throw Error("EKF forecast needs at least two history states");
  Gaussian g;
  g.mean = KinematicState::FromAgent(history.front()).ToVector();
  g.cov = StateMatrix::Zero();
  for (int i = 0; i < 6; ++i) g.cov(i, i) = cfg.initial_std[i] * cfg.initial_std[i];

  for (std::size_t i = 1; i < history.size(); ++i) {
    const double dt = history[i].t - history[i - 1].t;
    g = EkfPredict(cfg.model, g, dt);
    g = EkfUpdate(g, history[i].position(), cfg.obs_noise);
  }
  std::vector<Vec2> out;
  out.reserve(horizon);
  KinematicState s = KinematicState::FromVector(g.mean);
  for (std::size_t h = 0; h < horizon; ++h) {
    s = Step(cfg.model.kind, s, pred_dt);
    out.push_back({s.x, s.y});
  }
  return out;
}

}  // namespace minepred
