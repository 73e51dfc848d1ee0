#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace normctl {

// Deterministic random source. mt19937_64 has a standardized sequence, and all
// value transforms below are written out explicitly, so a seed fully pins the
// stream on every platform (std::uniform_real_distribution would not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {lo, ..., hi} inclusive. Modulo bias is irrelevant at the
  // range sizes used here (degrees, dimensions).
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Uniform on the closed unit disc, by rejection from the square.
  std::complex<double> unit_disc() {
    for (;;) {
      double x = 2.0 * uniform01() - 1.0;
      double y = 2.0 * uniform01() - 1.0;
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace normctl
