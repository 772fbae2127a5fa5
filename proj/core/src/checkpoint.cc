#include "minepred/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace minepred {
namespace {

constexpr char kMagic[8] = {'M', 'I', 'N', 'E', 'P', 'R', 'E', 'D'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

class Writer {
 public:
  void Bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const char*>(p);
    buf_.insert(buf_.end(), c, c + n);
  }
  void U32(std::uint32_t v) { Bytes(&v, 4); }
  void F64(double v) { Bytes(&v, 8); }
  void F32(float v) { Bytes(&v, 4); }
  void Str(const std::string& s) {
    U32(static_cast<std::uint32_t>(s.size()));
    Bytes(s.data(), s.size());
  }
  const std::vector<char>& buffer() const { return buf_; }

 private:
  std::vector<char> buf_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> buf) : buf_(std::move(buf)) {}
  void Bytes(void* p, std::size_t n) {
    if (pos_ + n > buf_.size()) throw Error("corrupt checkpoint: truncated");
    std::memcpy(p, buf_.data() + pos_, n);
    pos_ += n;
  }
  std::uint32_t U32() {
    std::uint32_t v;
    Bytes(&v, 4);
    return v;
  }
  double F64() {
    double v;
    Bytes(&v, 8);
    return v;
  }
  std::string Str() {
    const std::uint32_t n = U32();
    if (n > buf_.size() - pos_) throw Error("corrupt checkpoint: bad string length");
    std::string s(buf_.data() + pos_, n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == buf_.size(); }

 private:
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path, const ModelParams& params) {
  const ModelSpec& spec = params.spec;
  Writer w;
  w.Bytes(kMagic, sizeof(kMagic));
  w.U32(kCheckpointVersion);
  w.Str(spec.Descriptor());
  w.U32(spec.horizon);
  w.U32(spec.modes);
  w.U32(spec.hidden);
  w.U32(static_cast<std::uint32_t>(spec.channels.size()));
  for (int ch : spec.channels) w.U32(ch);
  w.F64(spec.raster.resolution);
  w.U32(spec.raster.size_px);
  w.F64(spec.raster.agent_col);
  w.F64(spec.raster.agent_row);
  w.F64(spec.raster.fade_delta);
  w.F64(spec.norm.v_scale);
  w.F64(spec.norm.a_scale);
  w.F64(spec.norm.omega_scale);
  w.F64(spec.coord_scale);
  w.U32(static_cast<std::uint32_t>(params.blobs.size()));
  for (const auto& blob : params.blobs) {
    w.Str(blob.name);
    w.U32(static_cast<std::uint32_t>(blob.shape.size()));
    for (int d : blob.shape) w.U32(d);
    for (float v : blob.data) w.F32(v);
  }

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

ModelParams LoadCheckpoint(const std::filesystem::path& path,
                           const std::optional<ModelSpec>& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path.string() + "'");
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(in), {}));

  char magic[8];
  r.Bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error("corrupt checkpoint: bad magic");
  }
  const std::uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw Error("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                std::to_string(kCheckpointVersion) + ")");
  }
  const std::string descriptor = r.Str();

  ModelParams p;
  ModelSpec& spec = p.spec;
  spec.horizon = static_cast<int>(r.U32());
  spec.modes = static_cast<int>(r.U32());
  spec.hidden = static_cast<int>(r.U32());
  const std::uint32_t n_ch = r.U32();
  if (n_ch > 64) throw Error("corrupt checkpoint: too many conv layers");
  spec.channels.clear();
  for (std::uint32_t i = 0; i < n_ch; ++i) spec.channels.push_back(static_cast<int>(r.U32()));
  spec.raster.resolution = r.F64();
  spec.raster.size_px = static_cast<int>(r.U32());
  spec.raster.agent_col = r.F64();
  spec.raster.agent_row = r.F64();
  spec.raster.fade_delta = r.F64();
  spec.norm.v_scale = r.F64();
  spec.norm.a_scale = r.F64();
  spec.norm.omega_scale = r.F64();
  spec.coord_scale = r.F64();
  spec.Validate();
  if (spec.Descriptor() != descriptor) {
    throw Error("corrupt checkpoint: descriptor disagrees with header fields");
  }
  if (expected.has_value() &&
      (expected->Descriptor() != descriptor || !(expected->raster == spec.raster))) {
    throw Error("architecture mismatch: checkpoint has '" + descriptor + "', expected '" +
                expected->Descriptor() + "'");
  }

  const ModelParams layout = InitParams(spec, 0);
  const std::uint32_t n_blobs = r.U32();
  if (n_blobs != layout.blobs.size()) throw Error("architecture mismatch: blob count");
  for (std::uint32_t i = 0; i < n_blobs; ++i) {
    ParamBlob<float> blob;
    blob.name = r.Str();
    const std::uint32_t ndim = r.U32();
    if (ndim > 8) throw Error("corrupt checkpoint: bad blob rank");
    std::size_t count = 1;
    for (std::uint32_t d = 0; d < ndim; ++d) {
      blob.shape.push_back(static_cast<int>(r.U32()));
      count *= static_cast<std::size_t>(blob.shape.back());
    }
    if (blob.name != layout.blobs[i].name || blob.shape != layout.blobs[i].shape) {
      throw Error("architecture mismatch: blob '" + blob.name + "'");
    }
    blob.data.resize(count);
    r.Bytes(blob.data.data(), count * sizeof(float));
    p.blobs.push_back(std::move(blob));
  }
  if (!r.AtEnd()) throw Error("corrupt checkpoint: trailing bytes");
  return p;
}

}  // namespace minepred
