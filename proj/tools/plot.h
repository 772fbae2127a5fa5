// SVG figures of one instance: map, ground truth, and predicted modes.

#ifndef MINEPRED_TOOLS_PLOT_H_
#define MINEPRED_TOOLS_PLOT_H_

#include <string>

#include "minepred/metrics.h"
#include "minepred/types.h"

namespace minepred {

struct PlotOptions {
  double margin = 15.0;      // m around the trajectories
  double px_per_m = 8.0;     // output scale
};

// Drivable polygons light grey, non-drivable dark grey, history grey,
// ground truth as one green polyline, each mode as one red polyline with
// opacity 0.25 + 0.75 p / p_max. Modes flagged infeasible are dashed. The
// highest probability is printed next to its mode's endpoint. Output is
// byte-deterministic.
std::string RenderPlotSvg(const Instance& instance, const SceneMap& map,
                          const Prediction& prediction, const PlotOptions& options = {});

}  // namespace minepred

#endif  // MINEPRED_TOOLS_PLOT_H_
