// Method comparison reports in the EKF / M=1 / M=k table layout.

#ifndef MINEPRED_REPORT_H_
#define MINEPRED_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "minepred/metrics.h"
#include "minepred/types.h"

namespace minepred {

struct MethodPredictions {
  std::string tag;  // "ekf" or "model-M<k>"
  std::vector<Prediction> predictions;
};

struct ReportConfig {
  int horizon = 6;
  double miss_threshold = kDefaultMissThreshold;
  MissCriterion miss_criterion = MissCriterion::kFinalStep;
  // Methods whose row reports no miss rate.
  std::vector<std::string> no_miss_rate = {"ekf"};
};

struct MetricRow {
  std::string method;
  double min_ade = 0.0;
  double min_fde = 0.0;
  std::optional<double> miss_rate;
  std::size_t count = 0;
  int modes = 0;
};

struct MetricReport {
  std::vector<MetricRow> rows;
  ReportConfig config;
};

// Ground truth keyed by instance id.
struct GroundTruth {
  std::size_t instance_id = 0;
  std::vector<Vec2> future;
};

// One row per method, in the given order. Every method must cover every
// ground-truth instance; extra predictions are ignored.
MetricReport Compare(const std::vector<MethodPredictions>& methods,
                     const std::vector<GroundTruth>& truth, const ReportConfig& cfg);

// "ekf" -> "EKF", "model-M5" -> "M=5"; anything else unchanged.
std::string MethodLabel(const std::string& tag);

std::string ReportCsv(const MetricReport& report);
std::string ReportText(const MetricReport& report);
void WriteReport(const std::filesystem::path& csv_path, const MetricReport& report);

}  // namespace minepred

#endif  // MINEPRED_REPORT_H_
