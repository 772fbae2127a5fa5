// Core value types shared by every stage of the pipeline.

#ifndef MINEPRED_TYPES_H_
#define MINEPRED_TYPES_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace minepred {

// Thrown for every contract violation in the library. The message is the
// user-facing diagnostic; the CLI prints it verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  double norm() const { return std::hypot(x, y); }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
};

using Polyline = std::vector<Vec2>;
using Polygon = std::vector<Vec2>;

// Wraps an angle to (-pi, pi].
inline double WrapAngle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::remainder(a, kTwoPi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

// Estimated state of one vehicle at one timestamp: pose plus kinematics.
struct AgentState {
  double t = 0.0;      // s
  double x = 0.0;      // m, world frame
  double y = 0.0;      // m, world frame
  double theta = 0.0;  // rad, CCW from +x, in (-pi, pi]
  double v = 0.0;      // m/s
  double a = 0.0;      // m/s^2
  double omega = 0.0;  // rad/s

  Vec2 position() const { return {x, y}; }
  bool finite() const;
  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct Footprint {
  double length = 5.0;  // m, along heading
  double width = 2.5;   // m

  static Footprint Pickup() { return {5.0, 2.5}; }
  static Footprint MiningTruck() { return {9.0, 5.0}; }
  void Validate() const;
  friend bool operator==(const Footprint&, const Footprint&) = default;
};

struct Trajectory {
  std::string agent_id;
  std::vector<AgentState> states;
  Footprint footprint;

  // Checks non-emptiness, finiteness, wrapped headings and strictly
  // increasing timestamps.
  void Validate() const;
};

// Local geodetic origin of a map; lat/lon are optional and only used when
// ingesting geodetic logs.
struct MapOrigin {
  bool has_geodetic = false;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  std::string note;
};

struct SceneMap {
  std::vector<Polygon> drivable;
  std::vector<Polygon> non_drivable;
  MapOrigin origin;

  // Checks vertex count, finiteness and simplicity of every polygon.
  void Validate() const;
  // True when p is inside some drivable polygon and no non-drivable one.
  bool IsDrivable(Vec2 p) const;
};

// One training/evaluation sample.
struct Instance {
  std::size_t id = 0;
  std::string agent_id;
  std::vector<AgentState> history;  // k states, oldest first, last = anchor
  std::vector<Vec2> future;         // H world-frame positions
  std::vector<double> future_t;     // H timestamps
  std::shared_ptr<const SceneMap> map;
  Footprint footprint;

  const AgentState& anchor() const { return history.back(); }
  void Validate(std::size_t k, std::size_t horizon) const;
};

struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
  std::uint64_t seed = 0;
};

}  // namespace minepred

#endif  // MINEPRED_TYPES_H_
