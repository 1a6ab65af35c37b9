#pragma once

#include <cstdint>
#include <random>

namespace dbmd {

/// Seeded PRNG stream. One instance per run; draw order is part of the
/// determinism contract (ion index ascending), so the engine is the only
/// place that advances it during a sweep.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;  // standardized output sequence, reproducible everywhere
};

}  // namespace dbmd
