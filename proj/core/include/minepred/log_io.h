// File formats for trajectory logs, maps, splits and instance sets.
//
// Trajectory logs are CSV with header `t,agent_id,x,y,theta,v,a,omega`
// (columns in any order; optional `length,width` footprint columns) or
// line-delimited JSON objects with the same keys. A log may carry `lat,lon`
// in place of `x,y`; those rows are projected around the map's geodetic
// origin.

#ifndef MINEPRED_LOG_IO_H_
#define MINEPRED_LOG_IO_H_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "minepred/scene_data.h"
#include "minepred/types.h"

namespace minepred {

// Equirectangular projection about the origin, metres east (x) / north (y).
Vec2 ProjectEquirectangular(double lat_deg, double lon_deg, const MapOrigin& origin);

// Rows are grouped by agent_id (first-appearance order) and sorted by t.
// Throws with the 1-based line number on malformed rows.
std::vector<Trajectory> ReadTrajectoryCsv(std::istream& in, const MapOrigin* origin = nullptr);
std::vector<Trajectory> ReadTrajectoryJsonl(std::istream& in, const MapOrigin* origin = nullptr);
// Dispatches on the extension: .jsonl/.ndjson/.json read as JSON lines,
// anything else as CSV.
std::vector<Trajectory> ReadTrajectoryLog(const std::filesystem::path& path,
                                          const MapOrigin* origin = nullptr);
void WriteTrajectoryCsv(std::ostream& out, const std::vector<Trajectory>& trajs);
void WriteTrajectoryCsv(const std::filesystem::path& path,
                        const std::vector<Trajectory>& trajs);

// {"origin": {"note", "lat", "lon"}, "drivable": [[[x,y],...],...],
//  "non_drivable": [...]}
SceneMap ParseMapJson(std::string_view text);
SceneMap ReadMapJson(const std::filesystem::path& path);
std::string MapToJson(const SceneMap& map);
void WriteMapJson(const std::filesystem::path& path, const SceneMap& map);

// {"seed": s, "train": [...], "val": [...], "test": [...]}
void WriteSplitJson(const std::filesystem::path& path, const DatasetSplit& split);
DatasetSplit ReadSplitJson(const std::filesystem::path& path);

// One JSON object per line: id, agent_id, footprint, history, future,
// future_t.
void WriteInstancesJsonl(const std::filesystem::path& path,
                         const std::vector<Instance>& instances);
std::vector<Instance> ReadInstancesJsonl(const std::filesystem::path& path,
                                         std::shared_ptr<const SceneMap> map);

}  // namespace minepred

#endif  // MINEPRED_LOG_IO_H_
