// Seeded random streams.
//
// Every random draw in the toolkit comes from an Rng constructed with
// Rng::Stream(seed, stream_id): the 64-bit seed is mixed with the stream id
// through splitmix64 and the result seeds a mt19937_64 engine. Distinct
// consumers (scenario geometry, per-agent routes, dataset shuffling, weight
// init, epoch shuffles) use distinct stream ids, so adding draws to one
// consumer never perturbs another. Distributions are implemented here rather
// than with <random>'s distribution classes, whose output is
// implementation-defined, so streams are reproducible across standard
// libraries.

#ifndef MINEPRED_RNG_H_
#define MINEPRED_RNG_H_

#include <cstdint>
#include <random>

namespace minepred {

// Well-known stream ids.
enum class StreamId : std::uint64_t {
  kScenario = 1,
  kAgents = 2,
  kSplit = 3,
  kInit = 4,
  kShuffle = 5,
  kTest = 99,
};

std::uint64_t SplitMix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  static Rng Stream(std::uint64_t seed, std::uint64_t stream_id);
  static Rng Stream(std::uint64_t seed, StreamId id) {
    return Stream(seed, static_cast<std::uint64_t>(id));
  }
  // A child stream, e.g. one per agent or epoch.
  Rng Fork(std::uint64_t child_id);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Unbiased integer in [0, n).
  std::uint64_t UniformInt(std::uint64_t n);
  // Standard normal via Box-Muller.
  double Normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace minepred

#endif  // MINEPRED_RNG_H_
