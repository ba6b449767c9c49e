#pragma once

#include <cstdint>

namespace qka {

// Deterministic random stream (splitmix64). One stream per protocol run,
// threaded explicitly through every sampling operation so that transcripts
// are reproducible from (seed, run_index) alone.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  // Injective in index for a fixed seed: distinct trials never share a stream.
  static RandomStream derive(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(mix(seed) + 0x9E3779B97F4A7C15ULL * (index + 1));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // rejection sampling on the top of the range to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool coin() { return (next_u64() & 1u) != 0; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace qka
