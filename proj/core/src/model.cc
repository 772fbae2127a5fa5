#include "minepred/model.h"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "minepred/rng.h"

namespace minepred {
namespace {

template <typename T>
using MatR = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MapMat = Eigen::Map<MatR<T>>;
template <typename T>
using ConstMapMat = Eigen::Map<const MatR<T>>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MapVec = Eigen::Map<Vec<T>>;
template <typename T>
using ConstMapVec = Eigen::Map<const Vec<T>>;

constexpr int kKernel = 3;
constexpr int kStride = 2;
constexpr int kPad = 1;

int ConvOutSide(int side) { return (side + 2 * kPad - kKernel) / kStride + 1; }

// Adds the row sums of a row-major rows x cols matrix into out, scaled by
// `scale`. Eigen's vectorised reductions peel a head whose length depends on
// the data address, so their rounding varies between allocations; a plain
// sequential loop keeps training bit-deterministic.
template <typename T>
void AddRowSums(const T* data, int rows, int cols, T scale, T* out) {
  for (int r = 0; r < rows; ++r) {
    const T* row = data + std::size_t(r) * cols;
    T sum = T(0);
    for (int i = 0; i < cols; ++i) sum += row[i];
    out[r] += scale * sum;
  }
}

// col[(c*9 + ky*3 + kx), (oy*out + ox)] = in[c, oy*2 + ky - 1, ox*2 + kx - 1]
template <typename T>
void Im2Col(const T* in, int channels, int side, T* col) {
  const int out = ConvOutSide(side);
  const int plane = out * out;
  for (int c = 0; c < channels; ++c) {
    const T* src = in + std::size_t(c) * side * side;
    for (int ky = 0; ky < kKernel; ++ky) {
      for (int kx = 0; kx < kKernel; ++kx) {
        T* dst = col + std::size_t(c * 9 + ky * 3 + kx) * plane;
        for (int oy = 0; oy < out; ++oy) {
          const int iy = oy * kStride + ky - kPad;
          T* row = dst + std::size_t(oy) * out;
          if (iy < 0 || iy >= side) {
            std::fill(row, row + out, T(0));
            continue;
          }
          const T* src_row = src + std::size_t(iy) * side;
          for (int ox = 0; ox < out; ++ox) {
            const int ix = ox * kStride + kx - kPad;
            row[ox] = (ix >= 0 && ix < side) ? src_row[ix] : T(0);
          }
        }
      }
    }
  }
}

template <typename T>
void Col2Im(const T* col, int channels, int side, T* in) {
  const int out = ConvOutSide(side);
  const int plane = out * out;
  std::fill(in, in + std::size_t(channels) * side * side, T(0));
  for (int c = 0; c < channels; ++c) {
    T* dst = in + std::size_t(c) * side * side;
    for (int ky = 0; ky < kKernel; ++ky) {
      for (int kx = 0; kx < kKernel; ++kx) {
        const T* src = col + std::size_t(c * 9 + ky * 3 + kx) * plane;
        for (int oy = 0; oy < out; ++oy) {
          const int iy = oy * kStride + ky - kPad;
          if (iy < 0 || iy >= side) continue;
          T* dst_row = dst + std::size_t(iy) * side;
          const T* src_row = src + std::size_t(oy) * out;
          for (int ox = 0; ox < out; ++ox) {
            const int ix = ox * kStride + kx - kPad;
            if (ix >= 0 && ix < side) dst_row[ix] += src_row[ox];
          }
        }
      }
    }
  }
}

int ConvCount(const ModelSpec& spec) { return static_cast<int>(spec.channels.size()); }
int FeatureCount(const ModelSpec& spec) { return spec.channels.back(); }
int ConcatCount(const ModelSpec& spec) { return FeatureCount(spec) + 3; }

}  // namespace

int ModelSpec::feature_map_side() const {
  int side = raster.size_px;
  for (std::size_t i = 0; i < channels.size(); ++i) side = ConvOutSide(side);
  return side;
}

std::string ModelSpec::Descriptor() const {
  std::ostringstream os;
  int in_ch = 3;
  int side = raster.size_px;
  os << "input:" << side << "x" << side << "x3";
  for (int ch : channels) {
    side = ConvOutSide(side);
    os << ";conv3x3s2:" << in_ch << "->" << ch << "@" << side << "x" << side << ";relu";
    in_ch = ch;
  }
  os << ";gap:" << in_ch << ";concat_motion:" << in_ch + 3;
  os << ";linear:" << in_ch + 3 << "->" << hidden << ";relu";
  os << ";linear:" << hidden << "->" << output_size();
  os << ";H=" << horizon << ";M=" << modes;
  return os.str();
}

void ModelSpec::Validate() const {
  if (horizon < 1 || modes < 1) throw Error("H and M must be >= 1");
  if (channels.empty() || hidden < 1) throw Error("model needs conv layers and a hidden layer");
  for (int ch : channels) {
    if (ch < 1) throw Error("channel counts must be positive");
  }
  if (!(coord_scale > 0.0)) throw Error("coordinate scale must be positive");
  raster.Validate();
}

template <typename T>
std::size_t BasicParams<T>::size() const {
  std::size_t n = 0;
  for (const auto& b : blobs) n += b.data.size();
  return n;
}

template <typename T>
BasicParams<T> BasicParams<T>::ZerosLike() const {
  BasicParams out{spec, blobs};
  out.SetZero();
  return out;
}

template <typename T>
void BasicParams<T>::SetZero() {
  for (auto& b : blobs) std::fill(b.data.begin(), b.data.end(), T(0));
}

template <typename T>
void BasicParams<T>::AddScaled(const BasicParams& other, T scale) {
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    auto& dst = blobs[i].data;
    const auto& src = other.blobs[i].data;
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += scale * src[j];
  }
}

template <typename T>
bool BasicParams<T>::AllFinite() const {
  for (const auto& b : blobs) {
    for (T v : b.data) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

template <typename T>
T& BasicParams<T>::at(std::size_t flat_index) {
  for (auto& b : blobs) {
    if (flat_index < b.data.size()) return b.data[flat_index];
    flat_index -= b.data.size();
  }
  throw Error("parameter index out of range");
}

template <typename T>
const T& BasicParams<T>::at(std::size_t flat_index) const {
  return const_cast<BasicParams*>(this)->at(flat_index);
}

ModelParams InitParams(const ModelSpec& spec, std::uint64_t seed) {
  spec.Validate();
  Rng rng = Rng::Stream(seed, StreamId::kInit);
  ModelParams p;
  p.spec = spec;
  auto he_uniform = [&](std::string name, std::vector<int> shape, int fan_in, double gain) {
    ParamBlob<float> blob{std::move(name), std::move(shape), {}};
    std::size_t n = 1;
    for (int d : blob.shape) n *= static_cast<std::size_t>(d);
    const double bound = gain * std::sqrt(6.0 / fan_in);
    blob.data.resize(n);
    for (float& v : blob.data) v = static_cast<float>(rng.Uniform(-bound, bound));
    return blob;
  };
  auto zeros = [](std::string name, int n) {
    return ParamBlob<float>{std::move(name), {n}, std::vector<float>(n, 0.0f)};
  };
  int in_ch = 3;
  for (std::size_t i = 0; i < spec.channels.size(); ++i) {
    const int out_ch = spec.channels[i];
    const std::string base = "conv" + std::to_string(i);
    p.blobs.push_back(he_uniform(base + ".weight", {out_ch, in_ch, 3, 3}, in_ch * 9, 1.0));
    p.blobs.push_back(zeros(base + ".bias", out_ch));
    in_ch = out_ch;
  }
  const int concat = in_ch + 3;
  p.blobs.push_back(he_uniform("fc1.weight", {spec.hidden, concat}, concat, 1.0));
  p.blobs.push_back(zeros("fc1.bias", spec.hidden));
  p.blobs.push_back(
      he_uniform("fc2.weight", {spec.output_size(), spec.hidden}, spec.hidden, 0.01));
  p.blobs.push_back(zeros("fc2.bias", spec.output_size()));
  return p;
}

template <typename T>
std::vector<T> Forward(const BasicParams<T>& params, const RgbImage& image,
                       const MotionInput& motion, ForwardCache<T>* cache) {
  const ModelSpec& spec = params.spec;
  const int n = spec.raster.size_px;
  if (image.width != n || image.height != n) {
    throw Error("raster is " + std::to_string(image.width) + "x" + std::to_string(image.height) +
                " but the model expects " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!std::isfinite(motion.v) || !std::isfinite(motion.a) || !std::isfinite(motion.omega)) {
    throw Error("motion state must be finite");
  }
  const int layers = ConvCount(spec);
  if (params.blobs.size() != static_cast<std::size_t>(2 * layers + 4)) {
    throw Error("parameter layout does not match the architecture");
  }

  // Scratch buffers are reused across calls to avoid re-allocating the
  // im2col matrices for every sample.
  thread_local ForwardCache<T> scratch;
  thread_local std::vector<T> input;
  ForwardCache<T>& c = cache != nullptr ? *cache : scratch;
  c.valid = false;
  c.cols.resize(layers);
  c.acts.resize(layers);
  c.sides.assign(1, n);

  // HWC bytes -> CHW in [0, 1].
  input.resize(std::size_t(3) * n * n);
  const std::size_t plane = std::size_t(n) * n;
  for (std::size_t i = 0; i < plane; ++i) {
    for (int ch = 0; ch < 3; ++ch) {
      input[ch * plane + i] = static_cast<T>(image.data[i * 3 + ch]) / T(255);
    }
  }

  const std::vector<T>* layer_in = &input;
  int in_ch = 3;
  int side = n;
  for (int l = 0; l < layers; ++l) {
    const int out_ch = spec.channels[l];
    const int out_side = ConvOutSide(side);
    const int positions = out_side * out_side;
    const int k = in_ch * 9;
    std::vector<T>& col = c.cols[l];
    col.resize(std::size_t(k) * positions);
    Im2Col(layer_in->data(), in_ch, side, col.data());

    std::vector<T>& act = c.acts[l];
    act.resize(std::size_t(out_ch) * positions);
    ConstMapMat<T> w(params.blobs[2 * l].data.data(), out_ch, k);
    ConstMapVec<T> b(params.blobs[2 * l + 1].data.data(), out_ch);
    MapMat<T> out(act.data(), out_ch, positions);
    out.noalias() = w * ConstMapMat<T>(col.data(), k, positions);
    out.colwise() += b;
    out = out.cwiseMax(T(0));

    layer_in = &act;
    in_ch = out_ch;
    side = out_side;
    c.sides.push_back(side);
  }

  const int features = FeatureCount(spec);
  c.concat.assign(ConcatCount(spec), T(0));
  AddRowSums(c.acts.back().data(), features, side * side, T(1) / static_cast<T>(side * side),
             c.concat.data());
  c.concat[features + 0] = static_cast<T>(motion.v / spec.norm.v_scale);
  c.concat[features + 1] = static_cast<T>(motion.a / spec.norm.a_scale);
  c.concat[features + 2] = static_cast<T>(motion.omega / spec.norm.omega_scale);

  const auto& w1 = params.blobs[2 * layers];
  const auto& b1 = params.blobs[2 * layers + 1];
  const auto& w2 = params.blobs[2 * layers + 2];
  const auto& b2 = params.blobs[2 * layers + 3];
  const int concat = ConcatCount(spec);
  c.hidden.resize(spec.hidden);
  MapVec<T> hid(c.hidden.data(), spec.hidden);
  hid.noalias() = ConstMapMat<T>(w1.data.data(), spec.hidden, concat) *
                  ConstMapVec<T>(c.concat.data(), concat);
  hid += ConstMapVec<T>(b1.data.data(), spec.hidden);
  hid = hid.cwiseMax(T(0));

  const int out_n = spec.output_size();
  std::vector<T> out(out_n);
  MapVec<T> o(out.data(), out_n);
  o.noalias() = ConstMapMat<T>(w2.data.data(), out_n, spec.hidden) * hid;
  o += ConstMapVec<T>(b2.data.data(), out_n);
  c.valid = true;
  return out;
}

template <typename T>
void Backward(const BasicParams<T>& params, const ForwardCache<T>& cache,
              std::span<const T> d_output, BasicParams<T>& grads) {
  if (!cache.valid) throw Error("backward called without a retained forward pass");
  const ModelSpec& spec = params.spec;
  const int layers = ConvCount(spec);
  const int out_n = spec.output_size();
  const int concat = ConcatCount(spec);
  if (static_cast<int>(d_output.size()) != out_n) throw Error("output gradient has the wrong size");
  if (grads.blobs.size() != params.blobs.size()) throw Error("gradient layout mismatch");

  auto& g_w1 = grads.blobs[2 * layers].data;
  auto& g_b1 = grads.blobs[2 * layers + 1].data;
  auto& g_w2 = grads.blobs[2 * layers + 2].data;
  auto& g_b2 = grads.blobs[2 * layers + 3].data;
  const auto& w1 = params.blobs[2 * layers].data;
  const auto& w2 = params.blobs[2 * layers + 2].data;

  ConstMapVec<T> d_out(d_output.data(), out_n);
  ConstMapVec<T> hid(cache.hidden.data(), spec.hidden);
  MapMat<T>(g_w2.data(), out_n, spec.hidden).noalias() += d_out * hid.transpose();
  MapVec<T>(g_b2.data(), out_n) += d_out;

  Vec<T> d_hid = ConstMapMat<T>(w2.data(), out_n, spec.hidden).transpose() * d_out;
  for (int i = 0; i < spec.hidden; ++i) {
    if (!(cache.hidden[i] > T(0))) d_hid[i] = T(0);
  }
  ConstMapVec<T> cat(cache.concat.data(), concat);
  MapMat<T>(g_w1.data(), spec.hidden, concat).noalias() += d_hid * cat.transpose();
  MapVec<T>(g_b1.data(), spec.hidden) += d_hid;
  const Vec<T> d_cat = ConstMapMat<T>(w1.data(), spec.hidden, concat).transpose() * d_hid;

  // Global average pool: every position receives d_feature / positions.
  const int features = FeatureCount(spec);
  const int last_side = cache.sides.back();
  const int last_pos = last_side * last_side;
  thread_local std::vector<T> d_act;
  thread_local std::vector<T> d_in;
  thread_local MatR<T> d_col;
  d_act.resize(std::size_t(features) * last_pos);
  for (int ch = 0; ch < features; ++ch) {
    const T g = d_cat[ch] / static_cast<T>(last_pos);
    std::fill(d_act.begin() + std::size_t(ch) * last_pos,
              d_act.begin() + std::size_t(ch + 1) * last_pos, g);
  }

  for (int l = layers - 1; l >= 0; --l) {
    const int in_ch = l == 0 ? 3 : spec.channels[l - 1];
    const int out_ch = spec.channels[l];
    const int in_side = cache.sides[l];
    const int out_side = cache.sides[l + 1];
    const int positions = out_side * out_side;
    const int k = in_ch * 9;
    const std::vector<T>& act = cache.acts[l];
    for (std::size_t i = 0; i < d_act.size(); ++i) {
      if (!(act[i] > T(0))) d_act[i] = T(0);
    }
    ConstMapMat<T> d_pre(d_act.data(), out_ch, positions);
    ConstMapMat<T> col(cache.cols[l].data(), k, positions);
    MapMat<T>(grads.blobs[2 * l].data.data(), out_ch, k).noalias() += d_pre * col.transpose();
    AddRowSums(d_act.data(), out_ch, positions, T(1), grads.blobs[2 * l + 1].data.data());
    if (l == 0) break;
    d_col.resize(k, positions);
    d_col.noalias() = ConstMapMat<T>(params.blobs[2 * l].data.data(), out_ch, k).transpose() * d_pre;
    d_in.resize(std::size_t(in_ch) * in_side * in_side);
    Col2Im(d_col.data(), in_ch, in_side, d_in.data());
    d_act.swap(d_in);
  }
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double mx = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

template <typename T>
DecodedOutput DecodeOutput(const ModelSpec& spec, std::span<const T> raw) {
  if (static_cast<int>(raw.size()) != spec.output_size()) {
    throw Error("raw output has " + std::to_string(raw.size()) + " values, expected " +
                std::to_string(spec.output_size()));
  }
  DecodedOutput out;
  const int h = spec.horizon;
  out.modes.trajectories.assign(spec.modes, std::vector<Vec2>(h));
  for (int m = 0; m < spec.modes; ++m) {
    for (int s = 0; s < h; ++s) {
      const std::size_t base = (std::size_t(m) * h + s) * 2;
      out.modes.trajectories[m][s] = {spec.coord_scale * static_cast<double>(raw[base]),
                                      spec.coord_scale * static_cast<double>(raw[base + 1])};
    }
  }
  const int nc = spec.coord_count();
  for (int m = 0; m < spec.modes; ++m) out.logits.push_back(static_cast<double>(raw[nc + m]));
  out.modes.probs = Softmax(out.logits);
  return out;
}

template <typename T>
std::vector<T> EncodeOutputGradient(const ModelSpec& spec, std::span<const double> d_coords,
                                    std::span<const double> d_logits) {
  const int nc = spec.coord_count();
  if (static_cast<int>(d_coords.size()) != nc || static_cast<int>(d_logits.size()) != spec.modes) {
    throw Error("loss gradient does not match the head layout");
  }
  std::vector<T> g(spec.output_size());
  for (int i = 0; i < nc; ++i) g[i] = static_cast<T>(spec.coord_scale * d_coords[i]);
  for (int m = 0; m < spec.modes; ++m) g[nc + m] = static_cast<T>(d_logits[m]);
  return g;
}

DecodedOutput Predict(const ModelParams& params, const Raster& raster,
                      const MotionInput& motion) {
  if (!(raster.config == params.spec.raster)) {
    throw Error("raster config does not match the checkpoint's raster config");
  }
  const std::vector<float> raw = Forward(params, raster.image, motion);
  return DecodeOutput<float>(params.spec, raw);
}

template struct BasicParams<float>;
template struct BasicParams<double>;
template std::vector<float> Forward(const BasicParams<float>&, const RgbImage&,
                                    const MotionInput&, ForwardCache<float>*);
template std::vector<double> Forward(const BasicParams<double>&, const RgbImage&,
                                     const MotionInput&, ForwardCache<double>*);
template void Backward(const BasicParams<float>&, const ForwardCache<float>&,
                       std::span<const float>, BasicParams<float>&);
template void Backward(const BasicParams<double>&, const ForwardCache<double>&,
                       std::span<const double>, BasicParams<double>&);
template DecodedOutput DecodeOutput(const ModelSpec&, std::span<const float>);
template DecodedOutput DecodeOutput(const ModelSpec&, std::span<const double>);
template std::vector<float> EncodeOutputGradient(const ModelSpec&, std::span<const double>,
                                                 std::span<const double>);
template std::vector<double> EncodeOutputGradient(const ModelSpec&, std::span<const double>,
                                                  std::span<const double>);

}  // namespace minepred
