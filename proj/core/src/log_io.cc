#include "minepred/log_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace minepred {
namespace {

using nlohmann::json;

constexpr double kEarthRadius = 6378137.0;  // WGS-84 equatorial, m

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(Trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(Trim(cur));
  return out;
}

double ParseDouble(const std::string& s, std::size_t line, const std::string& col) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error("line " + std::to_string(line) + ": bad value '" + s +
                "' in column '" + col + "'");
  }
  return v;
}

std::string FormatDouble(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// Accumulates rows per agent and turns them into validated trajectories.
class TrajectoryBuilder {
 public:
  void Add(const std::string& agent, const AgentState& s, const Footprint* fp) {
    auto [it, inserted] = index_.try_emplace(agent, trajs_.size());
    if (inserted) trajs_.push_back({agent, {}, Footprint::Pickup()});
    Trajectory& traj = trajs_[it->second];
    traj.states.push_back(s);
    if (fp != nullptr) traj.footprint = *fp;
  }

  std::vector<Trajectory> Finish() {
    for (Trajectory& traj : trajs_) {
      std::stable_sort(traj.states.begin(), traj.states.end(),
                       [](const AgentState& a, const AgentState& b) { return a.t < b.t; });
      traj.Validate();
    }
    return std::move(trajs_);
  }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<Trajectory> trajs_;
};

Vec2 PositionFrom(bool geodetic, double a, double b, const MapOrigin* origin,
                  std::size_t line) {
  if (!geodetic) return {a, b};
  if (origin == nullptr || !origin->has_geodetic) {
    throw Error("line " + std::to_string(line) +
                ": lat/lon rows need a map with a geodetic origin");
  }
  return ProjectEquirectangular(a, b, *origin);
}

json PolygonsToJson(const std::vector<Polygon>& polys) {
  json arr = json::array();
  for (const Polygon& poly : polys) {
    json p = json::array();
    for (const Vec2& v : poly) p.push_back({v.x, v.y});
    arr.push_back(std::move(p));
  }
  return arr;
}

std::vector<Polygon> PolygonsFromJson(const json& arr, const char* name) {
  std::vector<Polygon> out;
  if (arr.is_null()) return out;
  if (!arr.is_array()) throw Error(std::string("map field '") + name + "' must be an array");
  for (const json& p : arr) {
    Polygon poly;
    for (const json& v : p) {
      if (!v.is_array() || v.size() != 2) {
        throw Error(std::string("map field '") + name + "' has a malformed vertex");
      }
      poly.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    out.push_back(std::move(poly));
  }
  return out;
}

json StateToJson(const AgentState& s) {
  return {{"t", s.t}, {"x", s.x}, {"y", s.y}, {"theta", s.theta},
          {"v", s.v}, {"a", s.a}, {"omega", s.omega}};
}

AgentState StateFromJson(const json& j) {
  return {j.at("t").get<double>(),     j.at("x").get<double>(),
          j.at("y").get<double>(),     j.at("theta").get<double>(),
          j.at("v").get<double>(),     j.at("a").get<double>(),
          j.at("omega").get<double>()};
}

}  // namespace

Vec2 ProjectEquirectangular(double lat_deg, double lon_deg, const MapOrigin& origin) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double x = kEarthRadius * (lon_deg - origin.lon_deg) * kRad *
                   std::cos(origin.lat_deg * kRad);
  const double y = kEarthRadius * (lat_deg - origin.lat_deg) * kRad;
  return {x, y};
}

std::vector<Trajectory> ReadTrajectoryCsv(std::istream& in, const MapOrigin* origin) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) header = SplitCsv(line);
  }
  if (header.empty()) return {};

  auto col = [&](const char* name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const bool geodetic = col("x") < 0 && col("lat") >= 0;
  const char* first_name = geodetic ? "lat" : "x";
  const char* second_name = geodetic ? "lon" : "y";
  const int c_t = col("t"), c_id = col("agent_id"), c_x = col(first_name),
            c_y = col(second_name), c_th = col("theta"), c_v = col("v"),
            c_a = col("a"), c_w = col("omega");
  const int c_len = col("length"), c_wid = col("width");
  for (int c : {c_t, c_id, c_x, c_y, c_th, c_v, c_a, c_w}) {
    if (c < 0) {
      throw Error("line " + std::to_string(line_no) +
                  ": header must contain t,agent_id,x,y,theta,v,a,omega");
    }
  }

  TrajectoryBuilder builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitCsv(line);
    if (cells.size() != header.size()) {
      throw Error("line " + std::to_string(line_no) + ": expected " +
                  std::to_string(header.size()) + " fields, got " +
                  std::to_string(cells.size()));
    }
    auto num = [&](int c) { return ParseDouble(cells[c], line_no, header[c]); };
    AgentState s;
    s.t = num(c_t);
    const Vec2 p = PositionFrom(geodetic, num(c_x), num(c_y), origin, line_no);
    s.x = p.x;
    s.y = p.y;
    s.theta = WrapAngle(num(c_th));
    s.v = num(c_v);
    s.a = num(c_a);
    s.omega = num(c_w);
    if (cells[c_id].empty()) {
      throw Error("line " + std::to_string(line_no) + ": empty agent_id");
    }
    if (c_len >= 0 && c_wid >= 0) {
      const Footprint fp{num(c_len), num(c_wid)};
      builder.Add(cells[c_id], s, &fp);
    } else {
      builder.Add(cells[c_id], s, nullptr);
    }
  }
  return builder.Finish();
}

std::vector<Trajectory> ReadTrajectoryJsonl(std::istream& in, const MapOrigin* origin) {
  std::string line;
  std::size_t line_no = 0;
  TrajectoryBuilder builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      AgentState s;
      s.t = j.at("t").get<double>();
      const bool geodetic = !j.contains("x") && j.contains("lat");
      const Vec2 p = geodetic
                         ? PositionFrom(true, j.at("lat").get<double>(),
                                        j.at("lon").get<double>(), origin, line_no)
                         : Vec2{j.at("x").get<double>(), j.at("y").get<double>()};
      s.x = p.x;
      s.y = p.y;
      s.theta = WrapAngle(j.at("theta").get<double>());
      s.v = j.at("v").get<double>();
      s.a = j.at("a").get<double>();
      s.omega = j.at("omega").get<double>();
      const std::string id = j.at("agent_id").is_string()
                                 ? j.at("agent_id").get<std::string>()
                                 : j.at("agent_id").dump();
      if (!s.finite()) throw Error("line " + std::to_string(line_no) + ": non-finite value");
      if (j.contains("length") && j.contains("width")) {
        const Footprint fp{j["length"].get<double>(), j["width"].get<double>()};
        builder.Add(id, s, &fp);
      } else {
        builder.Add(id, s, nullptr);
      }
    } catch (const Error& e) {
      throw;
    } catch (const std::exception& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return builder.Finish();
}

std::vector<Trajectory> ReadTrajectoryLog(const std::filesystem::path& path,
                                          const MapOrigin* origin) {
  auto in = OpenIn(path);
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") {
    return ReadTrajectoryJsonl(in, origin);
  }
  return ReadTrajectoryCsv(in, origin);
}

void WriteTrajectoryCsv(std::ostream& out, const std::vector<Trajectory>& trajs) {
  out << "t,agent_id,x,y,theta,v,a,omega,length,width\n";
  for (const Trajectory& traj : trajs) {
    for (const AgentState& s : traj.states) {
      out << FormatDouble(s.t) << ',' << traj.agent_id << ',' << FormatDouble(s.x)
          << ',' << FormatDouble(s.y) << ',' << FormatDouble(s.theta) << ','
          << FormatDouble(s.v) << ',' << FormatDouble(s.a) << ','
          << FormatDouble(s.omega) << ',' << FormatDouble(traj.footprint.length)
          << ',' << FormatDouble(traj.footprint.width) << '\n';
    }
  }
}

void WriteTrajectoryCsv(const std::filesystem::path& path,
                        const std::vector<Trajectory>& trajs) {
  auto out = OpenOut(path);
  WriteTrajectoryCsv(out, trajs);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

SceneMap ParseMapJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("map JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("map JSON must be an object");
  SceneMap map;
  try {
    map.drivable = PolygonsFromJson(j.value("drivable", json()), "drivable");
    map.non_drivable = PolygonsFromJson(j.value("non_drivable", json()), "non_drivable");
    if (j.contains("origin") && j["origin"].is_object()) {
      const json& o = j["origin"];
      map.origin.note = o.value("note", "");
      if (o.contains("lat") && o.contains("lon")) {
        map.origin.has_geodetic = true;
        map.origin.lat_deg = o["lat"].get<double>();
        map.origin.lon_deg = o["lon"].get<double>();
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(std::string("map JSON: ") + e.what());
  }
  map.Validate();
  return map;
}

SceneMap ReadMapJson(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseMapJson(ss.str());
}

std::string MapToJson(const SceneMap& map) {
  json origin = {{"note", map.origin.note}};
  if (map.origin.has_geodetic) {
    origin["lat"] = map.origin.lat_deg;
    origin["lon"] = map.origin.lon_deg;
  }
  json j = {{"origin", origin},
            {"drivable", PolygonsToJson(map.drivable)},
            {"non_drivable", PolygonsToJson(map.non_drivable)}};
  return j.dump() + "\n";
}

void WriteMapJson(const std::filesystem::path& path, const SceneMap& map) {
  auto out = OpenOut(path);
  out << MapToJson(map);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void WriteSplitJson(const std::filesystem::path& path, const DatasetSplit& split) {
  auto out = OpenOut(path);
  json j = {{"seed", split.seed},
            {"train", split.train},
            {"val", split.val},
            {"test", split.test}};
  out << j.dump() << "\n";
}

DatasetSplit ReadSplitJson(const std::filesystem::path& path) {
  auto in = OpenIn(path);
  try {
    const json j = json::parse(in);
    DatasetSplit split;
    split.seed = j.at("seed").get<std::uint64_t>();
    split.train = j.at("train").get<std::vector<std::size_t>>();
    split.val = j.at("val").get<std::vector<std::size_t>>();
    split.test = j.at("test").get<std::vector<std::size_t>>();
    return split;
  } catch (const std::exception& e) {
    throw Error("split file '" + path.string() + "': " + e.what());
  }
}

void WriteInstancesJsonl(const std::filesystem::path& path,
                         const std::vector<Instance>& instances) {
  auto out = OpenOut(path);
  for (const Instance& inst : instances) {
    json hist = json::array();
    for (const AgentState& s : inst.history) hist.push_back(StateToJson(s));
    json fut = json::array();
    for (const Vec2& p : inst.future) fut.push_back({p.x, p.y});
    json j = {{"id", inst.id},
              {"agent_id", inst.agent_id},
              {"footprint", {inst.footprint.length, inst.footprint.width}},
              {"history", std::move(hist)},
              {"future", std::move(fut)},
              {"future_t", inst.future_t}};
    out << j.dump() << "\n";
  }
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<Instance> ReadInstancesJsonl(const std::filesystem::path& path,
                                         std::shared_ptr<const SceneMap> map) {
  auto in = OpenIn(path);
  std::vector<Instance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      Instance inst;
      inst.id = j.at("id").get<std::size_t>();
      inst.agent_id = j.at("agent_id").get<std::string>();
      inst.footprint = {j.at("footprint")[0].get<double>(),
                        j.at("footprint")[1].get<double>()};
      for (const json& s : j.at("history")) inst.history.push_back(StateFromJson(s));
      for (const json& p : j.at("future")) {
        inst.future.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      inst.future_t = j.at("future_t").get<std::vector<double>>();
      inst.map = map;
      out.push_back(std::move(inst));
    } catch (const std::exception& e) {
      throw Error(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace minepred
