#include "minepred/rasterizer.h"

#include <algorithm>
#include <cmath>

#include "minepred/geometry.h"

namespace minepred {

RasterConfig RasterConfig::Full() { return {0.1, 1200, 600, 300, 0.1}; }
RasterConfig RasterConfig::Train() { return {0.5, 240, 120, 60, 0.1}; }
RasterConfig RasterConfig::Compact() { return {1.5, 80, 40, 20, 0.1}; }

RasterConfig RasterConfig::FromPreset(std::string_view name) {
  if (name == "full") return Full();
  if (name == "train") return Train();
  if (name == "compact") return Compact();
  throw Error("unknown raster preset '" + std::string(name) +
              "' (expected full, train or compact)");
}

void RasterConfig::Validate() const {
  if (!(resolution > 0.0)) throw Error("raster resolution must be positive");
  if (size_px <= 0) throw Error("raster size must be positive");
  if (!(agent_col >= 0 && agent_col < size_px && agent_row >= 0 && agent_row < size_px)) {
    throw Error("agent placement must lie on the canvas");
  }
  if (!(fade_delta >= 0.0 && fade_delta <= 1.0)) throw Error("fade delta must be in [0, 1]");
}

double HistoryBrightness(int steps_into_past, double delta) {
  return std::max(0.0, 1.0 - steps_into_past * delta);
}

PixelCoord WorldToPixel(Vec2 world, const AgentState& anchor, const RasterConfig& cfg) {
  const Vec2 local = ToAgentFrame(world, anchor);
  return {cfg.agent_col - local.y / cfg.resolution,
          cfg.agent_row + local.x / cfg.resolution};
}

Vec2 PixelToWorld(PixelCoord px, const AgentState& anchor, const RasterConfig& cfg) {
  const Vec2 local{(px.row - cfg.agent_row) * cfg.resolution,
                   (cfg.agent_col - px.col) * cfg.resolution};
  return FromAgentFrame(local, anchor);
}

void FillPolygon(RgbImage& image, std::span<const PixelCoord> polygon,
                 std::array<std::uint8_t, 3> color) {
  const std::size_t n = polygon.size();
  if (n < 3) return;
  double ymin = polygon[0].row, ymax = polygon[0].row;
  for (const PixelCoord& p : polygon) {
    ymin = std::min(ymin, p.row);
    ymax = std::max(ymax, p.row);
  }
  const int r0 = std::max(0, static_cast<int>(std::ceil(ymin)));
  const int r1 = std::min(image.height - 1, static_cast<int>(std::floor(ymax)));
  std::vector<double> xs;
  for (int r = r0; r <= r1; ++r) {
    const double y = r;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const PixelCoord a = polygon[j];
      const PixelCoord b = polygon[i];
      // Half-open in y so shared vertices are counted once.
      if ((a.row <= y && y < b.row) || (b.row <= y && y < a.row)) {
        xs.push_back(a.col + (y - a.row) * (b.col - a.col) / (b.row - a.row));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int c0 = std::max(0, static_cast<int>(std::ceil(xs[k])));
      const int c1 = std::min(image.width, static_cast<int>(std::ceil(xs[k + 1])));
      for (int c = c0; c < c1; ++c) {
        std::uint8_t* px = image.PixelFromBottom(c, r);
        px[0] = color[0];
        px[1] = color[1];
        px[2] = color[2];
      }
    }
  }
}

Raster Render(const SceneMap& map, std::span<const HistoryPose> history,
              const RasterConfig& cfg) {
  if (history.empty()) throw Error("anchor required");
  cfg.Validate();
  const AgentState& anchor = history.back().state;
  Raster raster{RgbImage(cfg.size_px, cfg.size_px), cfg, anchor};

  std::vector<PixelCoord> px;
  auto paint = [&](std::span<const Vec2> poly, std::array<std::uint8_t, 3> color) {
    px.clear();
    for (const Vec2& p : poly) px.push_back(WorldToPixel(p, anchor, cfg));
    FillPolygon(raster.image, px, color);
  };
  for (const Polygon& poly : map.drivable) paint(poly, {255, 255, 255});
  for (const Polygon& poly : map.non_drivable) paint(poly, {0, 0, 0});

  const int k = static_cast<int>(history.size());
  for (int i = 0; i < k; ++i) {
    const int steps_back = k - 1 - i;
    const double b = HistoryBrightness(steps_back, cfg.fade_delta);
    const auto red = static_cast<std::uint8_t>(std::lround(255.0 * b));
    const Polygon box = FootprintCorners(history[i].state, history[i].footprint);
    paint(box, {red, 0, 0});
  }
  return raster;
}

Raster RenderInstance(const Instance& instance, const RasterConfig& cfg) {
  std::vector<HistoryPose> poses;
  poses.reserve(instance.history.size());
  for (const AgentState& s : instance.history) poses.push_back({s, instance.footprint});
  static const SceneMap kEmpty;
  return Render(instance.map ? *instance.map : kEmpty, poses, cfg);
}

}  // namespace minepred
