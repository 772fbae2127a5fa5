// Fixed scenes shared by the rasterizer unit tests and the acceptance run.

#ifndef MINEPRED_TESTS_SCENES_H_
#define MINEPRED_TESTS_SCENES_H_

#include <vector>

#include "minepred/rasterizer.h"
#include "minepred/types.h"

namespace minepred::testing {

inline AgentState Pose(double x, double y, double theta) {
  AgentState s;
  s.x = x;
  s.y = y;
  s.theta = theta;
  return s;
}

// A scene whose edges avoid pixel centres so every pixel has a clear owner.
// Rendered with the train preset it is the golden image odd_scene_train.png.
inline SceneMap OddScene() {
  SceneMap map;
  map.drivable.push_back({{-41.3, -17.1}, {37.9, -22.7}, {44.1, 53.3}, {-12.2, 71.9}});
  map.drivable.push_back({{-58.7, 5.3}, {-30.1, 9.7}, {-33.3, 40.9}});
  map.non_drivable.push_back({{-5.3, 20.3}, {9.9, 18.1}, {12.7, 31.7}, {-2.1, 33.9}});
  return map;
}

inline std::vector<HistoryPose> OddHistory() {
  std::vector<HistoryPose> h;
  for (int i = 0; i < 6; ++i) {
    h.push_back({Pose(1.13 + 0.07 * i, -3.37 + 1.61 * i, 1.31 + 0.03 * i), {5.03, 2.47}});
  }
  return h;
}

}  // namespace minepred::testing

#endif  // MINEPRED_TESTS_SCENES_H_
