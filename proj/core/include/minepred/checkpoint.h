// Versioned binary checkpoints.
//
// Layout (all integers u32 little-endian, reals as noted):
//   magic "MINEPRED" (8 bytes), format version
//   architecture descriptor (length-prefixed UTF-8)
//   H, M, hidden, channel count, channels...
//   raster: resolution f64, size_px, agent_col f64, agent_row f64, fade_delta f64
//   normalization: v_scale f64, a_scale f64, omega_scale f64, coord_scale f64
//   blob count, then per blob: name (length-prefixed), ndim, dims...,
//   values as f32 little-endian in declared order.

#ifndef MINEPRED_CHECKPOINT_H_
#define MINEPRED_CHECKPOINT_H_

#include <filesystem>
#include <optional>

#include "minepred/model.h"

namespace minepred {

inline constexpr std::uint32_t kCheckpointVersion = 1;

void SaveCheckpoint(const std::filesystem::path& path, const ModelParams& params);

// Throws on a bad magic, unsupported version or truncated file. When
// `expected` is given, throws "architecture mismatch" unless its descriptor
// and raster config match the file's.
ModelParams LoadCheckpoint(const std::filesystem::path& path,
                           const std::optional<ModelSpec>& expected = std::nullopt);

}  // namespace minepred

#endif  // MINEPRED_CHECKPOINT_H_
