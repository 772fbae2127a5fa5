// Mini-batch training of the multimodal predictor.

#ifndef MINEPRED_TRAINER_H_
#define MINEPRED_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "minepred/losses.h"
#include "minepred/model.h"
#include "minepred/rasterizer.h"
#include "minepred/types.h"

namespace minepred {

struct TrainConfig {
  int batch_size = 64;
  double learning_rate = 1e-4;
  int epochs = 20;
  long max_steps = 0;  // 0 = no step cap
  std::uint64_t seed = 0;
  std::string optimizer = "adam";

  void Validate() const;
};

// A rendered, agent-centric training example.
struct TrainSample {
  std::size_t instance_id = 0;
  RgbImage raster;
  MotionInput motion;
  std::vector<Vec2> target;  // future positions in the anchor frame
};

TrainSample MakeSample(const Instance& instance, const RasterConfig& cfg);
std::vector<TrainSample> MakeSamples(std::span<const Instance> instances,
                                     std::span<const std::size_t> indices,
                                     const RasterConfig& cfg);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;  // mean batch loss over the epoch
  double val_loss = 0.0;    // NaN when there is no validation set
};

struct TrainResult {
  ModelParams best;          // lowest validation loss (final when no val set)
  ModelParams final_params;  // after the last step
  std::vector<EpochRecord> history;
  std::vector<double> step_losses;
  long steps = 0;
  int best_epoch = 0;
};

// Called after every optimizer step with the step count (1-based), the batch
// loss and the current parameters. Returning false stops training.
using StepCallback = std::function<bool(long, double, const ModelParams&)>;

// Mean loss and summed gradient contribution for one sample.
double AccumulateSample(const ModelParams& params, const TrainSample& sample,
                        const LossConfig& loss, ModelParams* grads);

// Mean loss over samples without updating anything.
double EvaluateLoss(const ModelParams& params, std::span<const TrainSample> samples,
                    const LossConfig& loss);

// Shuffles the training set every epoch from the seed, averages gradients
// over each batch in a fixed order and applies Adam. Throws
// "divergence at step N" on a non-finite loss or parameter.
TrainResult Train(const ModelParams& init, std::span<const TrainSample> train,
                  std::span<const TrainSample> val, const TrainConfig& tcfg,
                  const LossConfig& lcfg, const StepCallback& on_step = {});

// CSV `epoch,train_loss,val_loss`.
void WriteLossHistoryCsv(const std::filesystem::path& path,
                         const std::vector<EpochRecord>& history);

}  // namespace minepred

#endif  // MINEPRED_TRAINER_H_
