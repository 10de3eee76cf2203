#pragma once

#include <cstdint>
#include <random>

#include "ucl/normal.hpp"

namespace ucl {

// Replicate-indexed random stream.  Every draw consumes exactly one engine
// step (gaussians come from the inverse cdf, not rejection), so a run can be
// replayed bit-for-bit from (base_seed, replicate) alone, on any platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t base_seed, std::uint64_t replicate)
      : engine_(derive(base_seed, replicate)) {}

  // uniform on (0,1): 53-bit grid offset by half a step, never exactly 0 or 1
  double next_uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  double next_gaussian() { return std_normal_quantile(next_uniform()); }

  // uniform integer in [lo, hi]
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  // uniform index in [0, n)
  int next_index(int n) { return static_cast<int>(next_int(0, n - 1)); }

 private:
  // splitmix64 finalizer over the (seed, replicate) pair; adjacent replicate
  // ids land in unrelated regions of the engine's state space
  static std::uint64_t derive(std::uint64_t base, std::uint64_t replicate) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (replicate + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ucl
