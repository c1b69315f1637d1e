#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace opsim {

/// splitmix64 mixing step (Steele, Lea & Flood; public-domain reference
/// constants). Bijective on 64-bit values, which makes seed derivation
/// collision-free by construction. Used as the stable seed-mixing function;
/// changing it would change every derived seed, so it is frozen.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic per-run random source. The engine (mt19937_64) has a
/// standardized output sequence; normal deviates use the Marsaglia polar
/// method rather than std::normal_distribution, whose value stream is
/// implementation-defined.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// One Gaussian deviate. Consumes a variable number of engine steps
  /// (rejection sampling) but counts as a single draw.
  double normal(double mean = 0.0, double sigma = 1.0) {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + sigma * u * std::sqrt(-2.0 * std::log(s) / s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace opsim
