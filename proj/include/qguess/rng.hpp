#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qg {

/// Seeded generator used across the library. Uniforms take the top 53 bits
/// of the mt19937_64 stream and normals come from Box-Muller, so streams do
/// not depend on standard-library distribution internals and experiments
/// reproduce bit-for-bit for a fixed seed.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [0, hi).
  double uniform(double hi) { return hi * uniform(); }

  /// Standard normal.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qg
