// Adam with bias correction. Moments are kept in double regardless of the
// parameter type.

#ifndef MINEPRED_ADAM_H_
#define MINEPRED_ADAM_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "minepred/types.h"

namespace minepred {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  Adam(std::size_t n, const AdamConfig& cfg) : cfg_(cfg), m_(n, 0.0), v_(n, 0.0) {}

  // One update over a single contiguous parameter vector.
  template <typename T>
  void Step(std::span<T> params, std::span<const T> grads) {
    if (params.size() != m_.size()) {
      throw Error("optimizer state does not match the parameter count");
    }
    BeginStep();
    Update(0, params, grads);
  }

  // Multi-segment update: call BeginStep once, then Update for each segment
  // with its offset into the flattened parameter vector.
  void BeginStep() {
    ++t_;
    c1_ = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    c2_ = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  }

  template <typename T>
  void Update(std::size_t offset, std::span<T> params, std::span<const T> grads) {
    if (grads.size() != params.size() || offset + params.size() > m_.size()) {
      throw Error("optimizer state does not match the parameter count");
    }
    for (std::size_t j = 0; j < params.size(); ++j) {
      const std::size_t i = offset + j;
      const double g = static_cast<double>(grads[j]);
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g;
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g * g;
      const double m_hat = m_[i] / c1_;
      const double v_hat = v_[i] / c2_;
      const double update = cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
      params[j] = static_cast<T>(static_cast<double>(params[j]) - update);
    }
  }

  long steps() const { return t_; }

 private:
  AdamConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  long t_ = 0;
  double c1_ = 1.0;
  double c2_ = 1.0;
};

}  // namespace minepred

#endif  // MINEPRED_ADAM_H_
