#pragma once

#include <cstdint>

namespace billiards {

// splitmix64 (Vigna). This is the one pseudorandom stream used anywhere in
// the library; it is spelled out here so a seed reproduces the same points
// on any platform or reimplementation.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound), bound >= 1. Modulo bias is irrelevant at
  // the bounds used here (bound << 2^64).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace billiards
