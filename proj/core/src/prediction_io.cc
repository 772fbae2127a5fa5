#include "minepred/prediction_io.h"

#include <fstream>
#include <ostream>

#include "json.hpp"

namespace minepred {

using nlohmann::json;

std::string PredictionToJson(const Prediction& pred) {
  json j;
  j["id"] = pred.instance_id;
  j["source"] = pred.source;
  json modes = json::array();
  for (const auto& mode : pred.modes) {
    json m = json::array();
    for (Vec2 p : mode) m.push_back({p.x, p.y});
    modes.push_back(std::move(m));
  }
  j["modes"] = std::move(modes);
  j["probs"] = pred.probs;
  if (!pred.feasible.empty()) {
    j["feasible"] = pred.feasible;
    j["all_infeasible"] = pred.all_infeasible;
  }
  return j.dump();
}

Prediction PredictionFromJson(const std::string& line) {
  Prediction p;
  try {
    const json j = json::parse(line);
    p.instance_id = j.at("id").get<std::size_t>();
    p.source = j.at("source").get<std::string>();
    for (const auto& mode : j.at("modes")) {
      std::vector<Vec2> m;
      for (const auto& pt : mode) m.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
      p.modes.push_back(std::move(m));
    }
    p.probs = j.at("probs").get<std::vector<double>>();
    if (j.contains("feasible")) {
      p.feasible = j.at("feasible").get<std::vector<bool>>();
      p.all_infeasible = j.value("all_infeasible", false);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed prediction: ") + e.what());
  }
  p.Validate();
  return p;
}

void WritePredictions(std::ostream& out, const std::vector<Prediction>& preds) {
  for (const Prediction& p : preds) out << PredictionToJson(p) << '\n';
}

void WritePredictions(const std::filesystem::path& path, const std::vector<Prediction>& preds) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  WritePredictions(out, preds);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<Prediction> ReadPredictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<Prediction> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(PredictionFromJson(line));
    } catch (const std::exception& e) {
      throw Error(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace minepred
