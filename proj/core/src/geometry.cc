#include "minepred/geometry.h"

#include <algorithm>
#include <cmath>

namespace minepred {
namespace {

int Orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b - a).cross(c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool OnSegment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool PointInPolygon(Vec2 p, std::span<const Vec2> polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool SegmentsIntersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int o1 = Orientation(a0, a1, b0);
  const int o2 = Orientation(a0, a1, b1);
  const int o3 = Orientation(b0, b1, a0);
  const int o4 = Orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(a0, a1, b0)) return true;
  if (o2 == 0 && OnSegment(a0, a1, b1)) return true;
  if (o3 == 0 && OnSegment(b0, b1, a0)) return true;
  if (o4 == 0 && OnSegment(b0, b1, a1)) return true;
  return false;
}

bool IsSimplePolygon(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (const Vec2& p : polygon) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = polygon[i];
    const Vec2 a1 = polygon[(i + 1) % n];
    if (a0 == a1) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (SegmentsIntersect(a0, a1, polygon[j], polygon[(j + 1) % n])) {
        return false;
      }
    }
  }
  return std::abs(SignedArea(polygon)) > 0.0;
}

double SignedArea(std::span<const Vec2> polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += polygon[i].cross(polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Polygon ConvexHull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  Polygon hull(2 * points.size());
  std::size_t k = 0;
  for (const Vec2& p : points) {
    while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2 p = points[i];
    while (k >= lower && (hull[k - 1] - hull[k - 2]).cross(p - hull[k - 2]) <= 0) {
      --k;
    }
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool PolygonsOverlap(std::span<const Vec2> a, std::span<const Vec2> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (SegmentsIntersect(a[i], a[(i + 1) % a.size()], b[j],
                            b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return PointInPolygon(a.front(), b) || PointInPolygon(b.front(), a);
}

Vec2 ToAgentFrame(Vec2 world, const AgentState& anchor) {
  const double c = std::cos(anchor.theta);
  const double s = std::sin(anchor.theta);
  const double dx = world.x - anchor.x;
  const double dy = world.y - anchor.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Vec2 FromAgentFrame(Vec2 local, const AgentState& anchor) {
  const double c = std::cos(anchor.theta);
  const double s = std::sin(anchor.theta);
  return {anchor.x + c * local.x - s * local.y,
          anchor.y + s * local.x + c * local.y};
}

Polygon FootprintCorners(const AgentState& pose, const Footprint& footprint) {
  const double hl = 0.5 * footprint.length;
  const double hw = 0.5 * footprint.width;
  return {FromAgentFrame({-hl, -hw}, pose), FromAgentFrame({hl, -hw}, pose),
          FromAgentFrame({hl, hw}, pose), FromAgentFrame({-hl, hw}, pose)};
}

}  // namespace minepred
