#pragma once

#include <cstdint>
#include <random>

namespace polyflow {

/// Reproducible uniform generator: std::mt19937_64 seeded with `seed`, each
/// raw 64-bit output x mapped to (x >> 11) * 2^-53 in [0, 1). Both pieces are
/// fully specified, so other implementations can regenerate the same streams.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polyflow
