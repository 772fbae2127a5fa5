#include "minepred/adam.h"

#include <cmath>

#include <gtest/gtest.h>

namespace minepred {
namespace {

// f(x) = 0.5 * c * (x - x0)^2 with gradient c * (x - x0).
TEST(AdamTest, QuadraticMatchesHandComputation) {
  const double c = 3.0, x0 = 1.5, lr = 0.1;
  std::vector<double> x = {4.0};
  Adam adam(1, {lr, 0.9, 0.999, 1e-8});

  // Step 1: m = 0.1 g, v = 0.001 g^2, bias corrections give m_hat = g and
  // v_hat = g^2, so the step is lr * g / (|g| + eps).
  const double g1 = c * (4.0 - x0);  // 7.5
  std::vector<double> g = {g1};
  adam.Step<double>(x, g);
  const double x1 = 4.0 - lr * g1 / (std::abs(g1) + 1e-8);
  EXPECT_NEAR(x[0], x1, 1e-10);

  // Step 2 written out with the moment recurrences.
  const double g2 = c * (x1 - x0);
  g = {g2};
  adam.Step<double>(x, g);
  const double m2 = 0.9 * (0.1 * g1) + 0.1 * g2;
  const double v2 = 0.999 * (0.001 * g1 * g1) + 0.001 * g2 * g2;
  const double m_hat = m2 / (1 - 0.81);
  const double v_hat = v2 / (1 - 0.999 * 0.999);
  EXPECT_NEAR(x[0], x1 - lr * m_hat / (std::sqrt(v_hat) + 1e-8), 1e-10);
  EXPECT_EQ(adam.steps(), 2);
}

TEST(AdamTest, ConvergesOnQuadratic) {
  std::vector<double> x = {10.0, -4.0};
  Adam adam(2, {0.05, 0.9, 0.999, 1e-8});
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> g = {2.0 * (x[0] - 1.0), 8.0 * (x[1] + 2.0)};
    adam.Step<double>(x, g);
  }
  EXPECT_NEAR(x[0], 1.0, 1e-3);
  EXPECT_NEAR(x[1], -2.0, 1e-3);
}

TEST(AdamTest, ZeroLearningRateIsANoOp) {
  std::vector<float> x = {0.25f, -3.0f, 7.0f};
  const std::vector<float> before = x;
  Adam adam(3, {0.0, 0.9, 0.999, 1e-8});
  for (int i = 0; i < 10; ++i) {
    std::vector<float> g = {1.0f, -2.0f, 0.5f};
    adam.Step<float>(x, g);
  }
  EXPECT_EQ(x, before);
}

TEST(AdamTest, SegmentedUpdateEqualsWholeVector) {
  std::vector<double> whole = {1, 2, 3, 4, 5};
  std::vector<double> parts = whole;
  Adam a(5, {0.01, 0.9, 0.999, 1e-8}), b(5, {0.01, 0.9, 0.999, 1e-8});
  for (int i = 0; i < 5; ++i) {
    std::vector<double> g = {0.1 * i, -1, 2, 0.5, -0.25 * i};
    a.Step<double>(whole, g);
    b.BeginStep();
    b.Update<double>(0, std::span<double>(parts).subspan(0, 2),
                     std::span<const double>(g).subspan(0, 2));
    b.Update<double>(2, std::span<double>(parts).subspan(2),
                     std::span<const double>(g).subspan(2));
  }
  EXPECT_EQ(whole, parts);
}

TEST(AdamTest, SizeMismatchIsAnError) {
  Adam adam(2, {});
  std::vector<double> x = {1, 2, 3}, g = {1, 2, 3};
  EXPECT_THROW(adam.Step<double>(x, g), Error);
}

}  // namespace
}  // namespace minepred
