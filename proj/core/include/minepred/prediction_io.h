// Line-delimited JSON prediction files:
//   {"id": 3, "source": "model-M5", "modes": [[[x,y],...],...], "probs": [...]}
// Filtered predictions additionally carry "feasible" and "all_infeasible".

#ifndef MINEPRED_PREDICTION_IO_H_
#define MINEPRED_PREDICTION_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "minepred/metrics.h"

namespace minepred {

std::string PredictionToJson(const Prediction& pred);
Prediction PredictionFromJson(const std::string& line);

void WritePredictions(std::ostream& out, const std::vector<Prediction>& preds);
void WritePredictions(const std::filesystem::path& path, const std::vector<Prediction>& preds);
// Errors name the offending line number.
std::vector<Prediction> ReadPredictions(const std::filesystem::path& path);

}  // namespace minepred

#endif  // MINEPRED_PREDICTION_IO_H_
