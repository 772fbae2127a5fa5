// Lossless image export/import for rasters.

#ifndef MINEPRED_IMAGE_IO_H_
#define MINEPRED_IMAGE_IO_H_

#include <filesystem>

#include "minepred/rasterizer.h"

namespace minepred {

// 8-bit RGB PNG via libpng.
void WritePng(const std::filesystem::path& path, const RgbImage& image);
RgbImage ReadPng(const std::filesystem::path& path);

// Binary PPM (P6).
void WritePpm(const std::filesystem::path& path, const RgbImage& image);
RgbImage ReadPpm(const std::filesystem::path& path);

}  // namespace minepred

#endif  // MINEPRED_IMAGE_IO_H_
