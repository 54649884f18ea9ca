#pragma once
// Deterministic random source for simulations: std::mt19937_64 with
// explicit samplers (53-bit uniforms, Box-Muller normals, rejection-sampled
// indices) so seeded experiments reproduce exactly.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace netprobe {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; keeps one spare between calls.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform index in [0, n), rejection-sampled so every value is exactly
  // equally likely.
  std::uint32_t uniform_index(std::uint32_t n) {
    const std::uint64_t span = n;
    const std::uint64_t reject_below = (0 - span) % span;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= reject_below) return static_cast<std::uint32_t>(r % span);
    }
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace netprobe
