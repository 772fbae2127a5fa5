#include "minepred/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace minepred {

MetricReport Compare(const std::vector<MethodPredictions>& methods,
                     const std::vector<GroundTruth>& truth, const ReportConfig& cfg) {
  if (truth.empty()) throw Error("no test instances to evaluate");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (!seen.insert(m.tag).second) throw Error("duplicate method tag '" + m.tag + "'");
  }
  MetricReport report;
  report.config = cfg;
  for (const auto& method : methods) {
    std::map<std::size_t, const Prediction*> by_id;
    for (const Prediction& p : method.predictions) by_id.emplace(p.instance_id, &p);

    std::vector<Prediction> preds;
    std::vector<std::vector<Vec2>> gts;
    MetricRow row;
    row.method = method.tag;
    double ade = 0.0;
    double fde = 0.0;
    for (const GroundTruth& gt : truth) {
      auto it = by_id.find(gt.instance_id);
      if (it == by_id.end()) {
        throw Error("method '" + method.tag + "' has no prediction for instance " +
                    std::to_string(gt.instance_id));
      }
      ade += MinAde(*it->second, gt.future);
      fde += MinFde(*it->second, gt.future);
      row.modes = std::max(row.modes, static_cast<int>(it->second->modes.size()));
      preds.push_back(*it->second);
      gts.push_back(gt.future);
    }
    const double n = static_cast<double>(truth.size());
    row.min_ade = ade / n;
    row.min_fde = fde / n;
    row.count = truth.size();
    const bool skip = std::find(cfg.no_miss_rate.begin(), cfg.no_miss_rate.end(), method.tag) !=
                      cfg.no_miss_rate.end();
    if (!skip) row.miss_rate = MissRate(preds, gts, cfg.miss_threshold, cfg.miss_criterion);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string MethodLabel(const std::string& tag) {
  if (tag == "ekf") return "EKF";
  if (tag.rfind("model-M", 0) == 0) return "M=" + tag.substr(7);
  return tag;
}

namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string ReportCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "method,minADE,minFDE,missRate,n\n";
  for (const MetricRow& r : report.rows) {
    out << MethodLabel(r.method) << ',' << Fixed(r.min_ade, 6) << ',' << Fixed(r.min_fde, 6) << ',';
    if (r.miss_rate) out << Fixed(*r.miss_rate, 6);
    out << ',' << r.count << '\n';
  }
  return out.str();
}

std::string ReportText(const MetricReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %8s %8s %9s %6s\n", "Method", "minADE", "minFDE",
                "missRate", "n");
  out << line;
  for (const MetricRow& r : report.rows) {
    const std::string miss = r.miss_rate ? Fixed(*r.miss_rate, 3) : "\\";
    std::snprintf(line, sizeof line, "%-8s %8s %8s %9s %6zu\n", MethodLabel(r.method).c_str(),
                  Fixed(r.min_ade, 3).c_str(), Fixed(r.min_fde, 3).c_str(), miss.c_str(), r.count);
    out << line;
  }
  std::snprintf(line, sizeof line, "(H=%d, miss threshold %.2f m, %s)\n", report.config.horizon,
                report.config.miss_threshold,
                report.config.miss_criterion == MissCriterion::kFinalStep ? "final step"
                                                                          : "any step");
  out << line;
  return out.str();
}

void WriteReport(const std::filesystem::path& csv_path, const MetricReport& report) {
  if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
  std::ofstream out(csv_path);
  if (!out) throw Error("cannot open '" + csv_path.string() + "' for writing");
  out << ReportCsv(report);
  if (!out) throw Error("failed writing '" + csv_path.string() + "'");
}

}  // namespace minepred
