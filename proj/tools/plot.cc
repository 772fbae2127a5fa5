#include "plot.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace minepred {
namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void Add(Vec2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
};

}  // namespace

std::string RenderPlotSvg(const Instance& instance, const SceneMap& map,
                          const Prediction& prediction, const PlotOptions& options) {
  if (prediction.instance_id != instance.id) {
    throw Error("prediction is for instance " + std::to_string(prediction.instance_id) +
                ", not " + std::to_string(instance.id));
  }
  prediction.Validate();

  Box box;
  for (const AgentState& s : instance.history) box.Add(s.position());
  for (Vec2 p : instance.future) box.Add(p);
  for (const auto& mode : prediction.modes) {
    for (Vec2 p : mode) box.Add(p);
  }
  box.x0 -= options.margin;
  box.y0 -= options.margin;
  box.x1 += options.margin;
  box.y1 += options.margin;
  const double s = options.px_per_m;
  const double width = (box.x1 - box.x0) * s;
  const double height = (box.y1 - box.y0) * s;
  // World (x right, y up) to SVG (x right, y down).
  auto pt = [&](Vec2 p) { return Num((p.x - box.x0) * s) + "," + Num((box.y1 - p.y) * s); };
  auto points = [&](const auto& seq, auto get) {
    std::string out;
    for (const auto& e : seq) {
      if (!out.empty()) out += ' ';
      out += pt(get(e));
    }
    return out;
  };
  auto id = [](Vec2 p) { return p; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width) << "\" height=\""
      << Num(height) << "\" viewBox=\"0 0 " << Num(width) << ' ' << Num(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#404040\"/>\n";
  svg << "<g class=\"drivable\">\n";
  for (const Polygon& poly : map.drivable) {
    svg << "<polygon points=\"" << points(poly, id) << "\" fill=\"#e6e6e6\" stroke=\"none\"/>\n";
  }
  svg << "</g>\n<g class=\"non-drivable\">\n";
  for (const Polygon& poly : map.non_drivable) {
    svg << "<polygon points=\"" << points(poly, id) << "\" fill=\"#202020\" stroke=\"none\"/>\n";
  }
  svg << "</g>\n";

  svg << "<polyline class=\"history\" points=\""
      << points(instance.history, [](const AgentState& st) { return st.position(); })
      << "\" fill=\"none\" stroke=\"#707070\" stroke-width=\"2\"/>\n";

  const double p_max = *std::max_element(prediction.probs.begin(), prediction.probs.end());
  std::size_t best = 0;
  for (std::size_t m = 0; m < prediction.modes.size(); ++m) {
    if (prediction.probs[m] > prediction.probs[best]) best = m;
    const double opacity = p_max > 0.0 ? 0.25 + 0.75 * prediction.probs[m] / p_max : 0.25;
    const bool dashed = !prediction.feasible.empty() && !prediction.feasible[m];
    svg << "<polyline class=\"mode\" data-mode=\"" << m << "\" points=\"" << pt(instance.anchor().position())
        << ' ' << points(prediction.modes[m], id) << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\""
        << " stroke-opacity=\"" << Num(opacity) << '"';
    if (dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << "/>\n";
  }
  svg << "<polyline class=\"ground-truth\" points=\"" << pt(instance.anchor().position()) << ' '
      << points(instance.future, id) << "\" fill=\"none\" stroke=\"green\" stroke-width=\"2\"/>\n";

  const Vec2 label_at = prediction.modes[best].back();
  svg << "<text x=\"" << Num((label_at.x - box.x0) * s + 4) << "\" y=\""
      << Num((box.y1 - label_at.y) * s - 4)
      << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"red\">"
      << Num(prediction.probs[best]) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace minepred
