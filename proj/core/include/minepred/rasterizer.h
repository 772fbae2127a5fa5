// Agent-centric bird's-eye-view rasterization.
//
// Pixel coordinates are measured from the bottom-left corner with pixel
// centres at integer positions. The agent heading points up the image
// (increasing row) and the agent's left maps to decreasing column, so with
// the agent placed at (w, h) the canvas shows (n - h) * resolution metres
// ahead and h * resolution metres behind.
//
// Paint order: black background, drivable polygons white, non-drivable
// polygons black, then history footprints oldest first in red with
// brightness max(0, 1 - K * delta) for a pose K steps in the past.
// Polygon membership is decided by the pixel centre under the even-odd
// rule; there is no anti-aliasing.

#ifndef MINEPRED_RASTERIZER_H_
#define MINEPRED_RASTERIZER_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minepred/types.h"

namespace minepred {

struct RasterConfig {
  double resolution = 0.5;  // metres per pixel
  int size_px = 240;        // n, canvas is n x n
  double agent_col = 120;   // w
  double agent_row = 60;    // h
  double fade_delta = 0.1;  // delta

  // 0.1 m/px, 1200 x 1200, agent at (600, 300).
  static RasterConfig Full();
  // 0.5 m/px, 240 x 240, agent at (120, 60). Same extent as Full().
  static RasterConfig Train();
  // 1.5 m/px, 80 x 80, agent at (40, 20). Same extent, for single-core
  // experiments.
  static RasterConfig Compact();
  static RasterConfig FromPreset(std::string_view name);

  void Validate() const;
  friend bool operator==(const RasterConfig&, const RasterConfig&) = default;
};

// 8-bit RGB image stored top row first, row-major, interleaved channels.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(std::size_t(w) * h * 3, 0) {}

  // Access with the row counted from the bottom.
  std::uint8_t* PixelFromBottom(int col, int row) {
    return &data[(std::size_t(height - 1 - row) * width + col) * 3];
  }
  const std::uint8_t* PixelFromBottom(int col, int row) const {
    return &data[(std::size_t(height - 1 - row) * width + col) * 3];
  }
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

struct Raster {
  RgbImage image;
  RasterConfig config;
  AgentState anchor;
};

struct PixelCoord {
  double col = 0.0;
  double row = 0.0;  // from the bottom edge
};

struct HistoryPose {
  AgentState state;
  Footprint footprint;
};

double HistoryBrightness(int steps_into_past, double delta);

PixelCoord WorldToPixel(Vec2 world, const AgentState& anchor, const RasterConfig& cfg);
Vec2 PixelToWorld(PixelCoord px, const AgentState& anchor, const RasterConfig& cfg);

// Fills a polygon given in pixel coordinates with a flat colour.
void FillPolygon(RgbImage& image, std::span<const PixelCoord> polygon,
                 std::array<std::uint8_t, 3> color);

// `history` is ordered oldest first; its last element is the anchor pose.
// Throws "anchor required" when history is empty.
Raster Render(const SceneMap& map, std::span<const HistoryPose> history,
              const RasterConfig& cfg);
// Convenience overload using the instance's history and footprint.
Raster RenderInstance(const Instance& instance, const RasterConfig& cfg);

}  // namespace minepred

#endif  // MINEPRED_RASTERIZER_H_
