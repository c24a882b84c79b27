#pragma once

#include <cstdint>

namespace satiab {

/// Counter-based uniform generator: draw i is SplitMix64(seed + i * golden).
///
/// Every draw is a pure function of (seed, counter), so the stream can be
/// replayed from any position and draw counts are easy to audit.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return mix(seed_ + kGolden * ++counter_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t draws() const { return counter_; }
  std::uint64_t seed() const { return seed_; }

private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace satiab
