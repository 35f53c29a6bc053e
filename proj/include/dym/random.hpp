#pragma once

#include <cstdint>
#include <random>

namespace dym {

/// Seeded generator with a platform-independent stream: std::mt19937_64 (its
/// output sequence is fixed by the C++ standard) and a uniform double built
/// from the top 53 bits, avoiding the implementation-defined
/// std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dym
