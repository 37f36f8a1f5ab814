// Seeded counter-style generator used for all randomized inputs; the family
// is versioned in run metadata so traces stay reproducible across builds.
#pragma once

#include <cstdint>

namespace subflow {

inline constexpr const char* kRngVersion = "splitmix64-v1";

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace subflow
