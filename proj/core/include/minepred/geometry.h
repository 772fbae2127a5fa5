// Planar geometry helpers: point-in-polygon, simplicity, rigid frames.

#ifndef MINEPRED_GEOMETRY_H_
#define MINEPRED_GEOMETRY_H_

#include <span>
#include <vector>

#include "minepred/types.h"

namespace minepred {

// Even-odd (crossing number) test. Points exactly on an edge may land on
// either side; callers that care keep a margin.
bool PointInPolygon(Vec2 p, std::span<const Vec2> polygon);

// Proper or touching intersection of closed segments [a0,a1] and [b0,b1].
bool SegmentsIntersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// >= 3 vertices, finite, no two non-adjacent edges intersect.
bool IsSimplePolygon(std::span<const Vec2> polygon);

// Signed area, positive for counter-clockwise vertex order.
double SignedArea(std::span<const Vec2> polygon);

// Andrew's monotone chain; counter-clockwise, no collinear points.
Polygon ConvexHull(std::vector<Vec2> points);

// True when the two polygons share any point (edge crossing or containment).
bool PolygonsOverlap(std::span<const Vec2> a, std::span<const Vec2> b);

// Rigid transform into the frame anchored at `anchor`: +x along the anchor
// heading, +y to its left.
Vec2 ToAgentFrame(Vec2 world, const AgentState& anchor);
Vec2 FromAgentFrame(Vec2 local, const AgentState& anchor);

// Corners of the footprint rectangle centred on the pose, counter-clockwise
// starting at the rear-right corner.
Polygon FootprintCorners(const AgentState& pose, const Footprint& footprint);

}  // namespace minepred

#endif  // MINEPRED_GEOMETRY_H_
