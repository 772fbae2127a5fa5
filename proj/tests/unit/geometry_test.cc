#include "minepred/geometry.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "minepred/rng.h"

namespace minepred {
namespace {

constexpr double kPi = std::numbers::pi;

const Polygon kSquare{{0, 0}, {10, 0}, {10, 10}, {0, 10}};

TEST(PointInPolygonTest, SquareInteriorAndExterior) {
  EXPECT_TRUE(PointInPolygon({5, 5}, kSquare));
  EXPECT_TRUE(PointInPolygon({0.1, 9.9}, kSquare));
  EXPECT_FALSE(PointInPolygon({-0.1, 5}, kSquare));
  EXPECT_FALSE(PointInPolygon({5, 10.1}, kSquare));
}

TEST(PointInPolygonTest, ConcavePolygon) {
  // U shape opening upwards.
  const Polygon u{{0, 0}, {9, 0}, {9, 9}, {6, 9}, {6, 3}, {3, 3}, {3, 9}, {0, 9}};
  EXPECT_TRUE(PointInPolygon({1.5, 6}, u));
  EXPECT_TRUE(PointInPolygon({7.5, 6}, u));
  EXPECT_FALSE(PointInPolygon({4.5, 6}, u));
  EXPECT_TRUE(PointInPolygon({4.5, 1.5}, u));
}

TEST(SegmentsIntersectTest, CrossingTouchingAndDisjoint) {
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {2, 0}, {2, 0}, {3, 1}));
  EXPECT_TRUE(SegmentsIntersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  EXPECT_FALSE(SegmentsIntersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  EXPECT_FALSE(SegmentsIntersect({0, 0}, {1, 1}, {0, 1}, {0.4, 0.6}));
}

TEST(IsSimplePolygonTest, RejectsBowtieAndDegenerate) {
  EXPECT_TRUE(IsSimplePolygon(kSquare));
  const Polygon bowtie{{0, 0}, {10, 10}, {10, 0}, {0, 10}};
  EXPECT_FALSE(IsSimplePolygon(bowtie));
  const Polygon two{{0, 0}, {1, 1}};
  EXPECT_FALSE(IsSimplePolygon(two));
  const Polygon nan_vertex{{0, 0}, {1, 0}, {NAN, 1}};
  EXPECT_FALSE(IsSimplePolygon(nan_vertex));
}

TEST(SignedAreaTest, OrientationSign) {
  EXPECT_DOUBLE_EQ(SignedArea(kSquare), 100.0);
  Polygon cw(kSquare.rbegin(), kSquare.rend());
  EXPECT_DOUBLE_EQ(SignedArea(cw), -100.0);
}

TEST(ConvexHullTest, DropsInteriorAndCollinearPoints) {
  const Polygon hull = ConvexHull({{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}, {2, 7}});
  EXPECT_EQ(hull.size(), 4u);
  EXPECT_GT(SignedArea(hull), 0.0);
  EXPECT_DOUBLE_EQ(SignedArea(hull), 100.0);
}

TEST(PolygonsOverlapTest, CrossingContainedAndApart) {
  const Polygon inner{{4, 4}, {6, 4}, {6, 6}, {4, 6}};
  const Polygon crossing{{8, 8}, {12, 8}, {12, 12}, {8, 12}};
  const Polygon apart{{20, 20}, {21, 20}, {21, 21}};
  EXPECT_TRUE(PolygonsOverlap(kSquare, inner));
  EXPECT_TRUE(PolygonsOverlap(inner, kSquare));
  EXPECT_TRUE(PolygonsOverlap(kSquare, crossing));
  EXPECT_FALSE(PolygonsOverlap(kSquare, apart));
}

AgentState Pose(double x, double y, double theta) {
  AgentState s;
  s.x = x;
  s.y = y;
  s.theta = theta;
  return s;
}

TEST(AgentFrameTest, SpecExamples) {
  const Vec2 a = ToAgentFrame({100, 60}, Pose(100, 50, kPi / 2));
  EXPECT_NEAR(a.x, 10.0, 1e-12);
  EXPECT_NEAR(a.y, 0.0, 1e-12);

  const Vec2 b = ToAgentFrame({3, 4}, Pose(0, 0, 0));
  EXPECT_EQ(b.x, 3.0);
  EXPECT_EQ(b.y, 4.0);

  const Vec2 c = ToAgentFrame({1, 0}, Pose(0, 0, kPi));
  EXPECT_NEAR(c.x, -1.0, 1e-12);
  EXPECT_NEAR(c.y, 0.0, 1e-12);
}

TEST(AgentFrameTest, LeftIsPositiveY) {
  const Vec2 p = ToAgentFrame({0, 5}, Pose(0, 0, 0));
  EXPECT_NEAR(p.y, 5.0, 1e-12);
}

TEST(AgentFrameTest, AnchorMapsToOriginAndHeadingToUnitX) {
  Rng rng = Rng::Stream(1, StreamId::kTest);
  for (int i = 0; i < 10000; ++i) {
    const AgentState anchor = Pose(rng.Uniform(-1e3, 1e3), rng.Uniform(-1e3, 1e3),
                                   WrapAngle(rng.Uniform(-kPi, kPi)));
    const Vec2 o = ToAgentFrame(anchor.position(), anchor);
    EXPECT_NEAR(o.x, 0.0, 1e-12);
    EXPECT_NEAR(o.y, 0.0, 1e-12);
    const Vec2 ahead{anchor.x + std::cos(anchor.theta), anchor.y + std::sin(anchor.theta)};
    const Vec2 u = ToAgentFrame(ahead, anchor);
    // The world coordinates are ~1e3, so the subtraction itself costs ~1e-13.
    EXPECT_NEAR(u.x, 1.0, 1e-12);
    EXPECT_NEAR(u.y, 0.0, 1e-12);
  }
}

TEST(AgentFrameTest, RoundTripOnAMillionRandomPairs) {
  Rng rng = Rng::Stream(2, StreamId::kTest);
  double worst = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const AgentState anchor = Pose(rng.Uniform(-5e3, 5e3), rng.Uniform(-5e3, 5e3),
                                   WrapAngle(rng.Uniform(-kPi, kPi)));
    const Vec2 p{rng.Uniform(-5e3, 5e3), rng.Uniform(-5e3, 5e3)};
    const Vec2 q = FromAgentFrame(ToAgentFrame(p, anchor), anchor);
    worst = std::max(worst, (q - p).norm());
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(FootprintCornersTest, AxisAlignedBox) {
  const Polygon c = FootprintCorners(Pose(10, 20, 0), {4.0, 2.0});
  ASSERT_EQ(c.size(), 4u);
  EXPECT_NEAR(c[0].x, 8.0, 1e-12);
  EXPECT_NEAR(c[0].y, 19.0, 1e-12);
  EXPECT_NEAR(std::abs(SignedArea(c)), 8.0, 1e-9);
  EXPECT_GT(SignedArea(c), 0.0);
}

TEST(WrapAngleTest, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(WrapAngle(kPi), kPi);
  EXPECT_DOUBLE_EQ(WrapAngle(-kPi), kPi);
  EXPECT_NEAR(WrapAngle(3 * kPi / 2), -kPi / 2, 1e-12);
  EXPECT_NEAR(WrapAngle(0.25 + 8 * kPi), 0.25, 1e-12);
}

}  // namespace
}  // namespace minepred
