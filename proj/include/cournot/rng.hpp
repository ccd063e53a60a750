#pragma once

#include <cmath>
#include <cstdint>

namespace cournot {

// splitmix64 (Steele, Lea, Flood 2014). Chosen because its output is fully
// specified by the recurrence below, so sampled parameter sets are identical
// on every platform and standard library.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 mantissa bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent stream for work item `index` under a run-level seed. Sampling
// per item keeps results identical for any thread count or schedule.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed + 0x9e3779b97f4a7c15ull) ^
                    mix64(index + 0x632be59bd9b4e019ull));
}

}  // namespace cournot
