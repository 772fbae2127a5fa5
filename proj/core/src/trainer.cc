#include "minepred/trainer.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "minepred/adam.h"
#include "minepred/geometry.h"
#include "minepred/rng.h"

namespace minepred {

void TrainConfig::Validate() const {
  if (batch_size < 1) throw Error("batch size must be >= 1");
  if (!(learning_rate >= 0.0)) throw Error("learning rate must be >= 0");
  if (epochs < 1 && max_steps <= 0) throw Error("need a positive epoch count or step cap");
  if (optimizer != "adam") throw Error("unsupported optimizer '" + optimizer + "'");
}

TrainSample MakeSample(const Instance& instance, const RasterConfig& cfg) {
  TrainSample s;
  s.instance_id = instance.id;
  s.raster = RenderInstance(instance, cfg).image;
  const AgentState& anchor = instance.anchor();
  s.motion = {anchor.v, anchor.a, anchor.omega};
  for (const Vec2& p : instance.future) s.target.push_back(ToAgentFrame(p, anchor));
  return s;
}

std::vector<TrainSample> MakeSamples(std::span<const Instance> instances,
                                     std::span<const std::size_t> indices,
                                     const RasterConfig& cfg) {
  std::vector<TrainSample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= instances.size()) throw Error("split index " + std::to_string(i) + " out of range");
    out.push_back(MakeSample(instances[i], cfg));
  }
  return out;
}

double AccumulateSample(const ModelParams& params, const TrainSample& sample,
                        const LossConfig& loss, ModelParams* grads) {
  thread_local ForwardCache<float> cache;
  const std::vector<float> raw =
      Forward(params, sample.raster, sample.motion, grads != nullptr ? &cache : nullptr);
  const DecodedOutput dec = DecodeOutput<float>(params.spec, raw);
  const LossResult r = TotalLoss(dec.modes, dec.logits, sample.target, loss);
  if (grads != nullptr) {
    const std::vector<float> d_raw =
        EncodeOutputGradient<float>(params.spec, r.d_coords, r.d_logits);
    Backward<float>(params, cache, d_raw, *grads);
  }
  return r.value;
}

double EvaluateLoss(const ModelParams& params, std::span<const TrainSample> samples,
                    const LossConfig& loss) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const TrainSample& s : samples) sum += AccumulateSample(params, s, loss, nullptr);
  return sum / static_cast<double>(samples.size());
}

TrainResult Train(const ModelParams& init, std::span<const TrainSample> train,
                  std::span<const TrainSample> val, const TrainConfig& tcfg,
                  const LossConfig& lcfg, const StepCallback& on_step) {
  tcfg.Validate();
  lcfg.Validate();
  if (train.empty()) throw Error("training split is empty");
  if (lcfg.modes != init.spec.modes) throw Error("loss mode count differs from the model's");

  TrainResult result;
  result.final_params = init;
  result.best = init;
  ModelParams& params = result.final_params;
  ModelParams grads = params.ZerosLike();
  Adam adam(params.size(), {tcfg.learning_rate, 0.9, 0.999, 1e-8});
  Rng shuffle_root = Rng::Stream(tcfg.seed, StreamId::kShuffle);

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(train.size());
  bool stop = false;
  const int epochs = tcfg.epochs > 0 ? tcfg.epochs : std::numeric_limits<int>::max();
  for (int epoch = 1; epoch <= epochs && !stop; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = shuffle_root.Fork(static_cast<std::uint64_t>(epoch));
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[rng.UniformInt(i + 1)]);
    }

    double epoch_loss = 0.0;
    int epoch_batches = 0;
    for (std::size_t start = 0; start < order.size() && !stop; start += tcfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + tcfg.batch_size);
      grads.SetZero();
      double batch_loss = 0.0;
      for (std::size_t j = start; j < end; ++j) {
        batch_loss += AccumulateSample(params, train[order[j]], lcfg, &grads);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      batch_loss *= inv;
      for (auto& blob : grads.blobs) {
        for (float& g : blob.data) g = static_cast<float>(g * inv);
      }
      ++result.steps;
      if (!std::isfinite(batch_loss) || !grads.AllFinite()) {
        throw Error("divergence at step " + std::to_string(result.steps));
      }

      adam.BeginStep();
      std::size_t offset = 0;
      for (std::size_t b = 0; b < params.blobs.size(); ++b) {
        auto& p = params.blobs[b].data;
        adam.Update<float>(offset, p, grads.blobs[b].data);
        offset += p.size();
      }
      if (!params.AllFinite()) {
        throw Error("divergence at step " + std::to_string(result.steps));
      }

      result.step_losses.push_back(batch_loss);
      epoch_loss += batch_loss;
      ++epoch_batches;
      if (on_step && !on_step(result.steps, batch_loss, params)) stop = true;
      if (tcfg.max_steps > 0 && result.steps >= tcfg.max_steps) stop = true;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = epoch_loss / std::max(1, epoch_batches);
    rec.val_loss = EvaluateLoss(params, val, lcfg);
    result.history.push_back(rec);
    const double score = val.empty() ? -static_cast<double>(epoch) : rec.val_loss;
    if (score < best_val) {
      best_val = score;
      result.best = params;
      result.best_epoch = epoch;
    }
  }
  return result;
}

void WriteLossHistoryCsv(const std::filesystem::path& path,
                         const std::vector<EpochRecord>& history) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.precision(9);
  out << "epoch,train_loss,val_loss\n";
  for (const EpochRecord& r : history) {
    out << r.epoch << ',' << r.train_loss << ',';
    if (std::isfinite(r.val_loss)) out << r.val_loss;
    out << '\n';
  }
}

}  // namespace minepred
