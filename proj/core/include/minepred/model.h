// Compact convolutional multimodal trajectory predictor.
//
// Architecture (defaults):
//   raster n x n x 3, scaled to [0, 1]
//   3 x [conv 3x3, stride 2, pad 1, ReLU]   channels 3 -> 16 -> 32 -> 64
//   global average pool                    -> 64 features
//   concat normalized (v, a, omega)        -> 67
//   linear + ReLU                          -> 128
//   linear                                 -> (2H + 1) * M raw outputs
//
// The raw output holds M * 2H coordinates (mode-major, then step, then x/y)
// followed by M mode logits. Coordinates are agent-frame displacements in
// units of `coord_scale` metres.
//
// Everything numeric is templated on the scalar type: float for training and
// inference, double for finite-difference gradient checks.

#ifndef MINEPRED_MODEL_H_
#define MINEPRED_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "minepred/rasterizer.h"
#include "minepred/types.h"

namespace minepred {

struct StateNormalization {
  double v_scale = 15.0;     // m/s
  double a_scale = 3.0;      // m/s^2
  double omega_scale = 0.5;  // rad/s
  friend bool operator==(const StateNormalization&, const StateNormalization&) = default;
};

struct ModelSpec {
  int horizon = 6;  // H
  int modes = 5;    // M
  std::vector<int> channels{16, 32, 64};
  int hidden = 128;
  double coord_scale = 10.0;  // metres per raw output unit
  RasterConfig raster = RasterConfig::Train();
  StateNormalization norm;

  int coord_count() const { return 2 * horizon * modes; }
  int output_size() const { return (2 * horizon + 1) * modes; }
  // Spatial side length after the conv stack.
  int feature_map_side() const;
  // Layer list with shapes; two specs with equal descriptors have
  // interchangeable parameter layouts.
  std::string Descriptor() const;
  void Validate() const;
};

// (v, a, omega) of the anchor state.
struct MotionInput {
  double v = 0.0;
  double a = 0.0;
  double omega = 0.0;
};

template <typename T>
struct ParamBlob {
  std::string name;
  std::vector<int> shape;
  std::vector<T> data;
};

template <typename T>
struct BasicParams {
  ModelSpec spec;
  std::vector<ParamBlob<T>> blobs;  // conv0.w, conv0.b, ..., fc1.w, fc1.b, fc2.w, fc2.b

  std::size_t size() const;
  // Zero-filled tensor set with the same layout.
  BasicParams ZerosLike() const;
  void SetZero();
  // this += scale * other
  void AddScaled(const BasicParams& other, T scale);
  bool AllFinite() const;
  // Flat access across blobs in declared order.
  T& at(std::size_t flat_index);
  const T& at(std::size_t flat_index) const;

  template <typename U>
  BasicParams<U> Cast() const {
    BasicParams<U> out{spec, {}};
    for (const ParamBlob<T>& b : blobs) {
      out.blobs.push_back({b.name, b.shape, std::vector<U>(b.data.begin(), b.data.end())});
    }
    return out;
  }
};

using ModelParams = BasicParams<float>;

// Activations retained by Forward for Backward.
template <typename T>
struct ForwardCache {
  bool valid = false;
  std::vector<std::vector<T>> cols;   // im2col matrix per conv layer
  std::vector<std::vector<T>> acts;   // post-ReLU output per conv layer
  std::vector<int> sides;             // input side length per conv layer, plus final
  std::vector<T> concat;              // pooled features + normalized motion
  std::vector<T> hidden;              // post-ReLU hidden layer
};

// He-uniform conv/hidden weights, zero biases, output layer scaled by 0.01.
ModelParams InitParams(const ModelSpec& spec, std::uint64_t seed);

// Raw head output of length spec.output_size(). Throws on raster size or
// config mismatch. Pass a cache to retain intermediates for Backward.
template <typename T>
std::vector<T> Forward(const BasicParams<T>& params, const RgbImage& image,
                       const MotionInput& motion, ForwardCache<T>* cache = nullptr);

// Accumulates d(loss)/d(params) into `grads` given d(loss)/d(raw output).
// Throws when the cache does not hold a forward pass.
template <typename T>
void Backward(const BasicParams<T>& params, const ForwardCache<T>& cache,
              std::span<const T> d_output, BasicParams<T>& grads);

// M trajectories of H agent-frame positions with a probability per mode.
struct ModeSet {
  std::vector<std::vector<Vec2>> trajectories;
  std::vector<double> probs;

  std::size_t modes() const { return trajectories.size(); }
};

// Numerically stable softmax.
std::vector<double> Softmax(std::span<const double> logits);

struct DecodedOutput {
  ModeSet modes;
  std::vector<double> logits;
};

template <typename T>
DecodedOutput DecodeOutput(const ModelSpec& spec, std::span<const T> raw);

// Maps gradients w.r.t. decoded coordinates (metres, mode-major) and logits
// back onto the raw output vector.
template <typename T>
std::vector<T> EncodeOutputGradient(const ModelSpec& spec,
                                    std::span<const double> d_coords,
                                    std::span<const double> d_logits);

// Convenience: render-free prediction from a prepared raster.
DecodedOutput Predict(const ModelParams& params, const Raster& raster,
                      const MotionInput& motion);

}  // namespace minepred

#endif  // MINEPRED_MODEL_H_
