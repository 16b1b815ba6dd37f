#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace pgb {

// Counter-based SplitMix64 generator. A stream is a pure function of
// (seed, label, trial): sweeps hand every trial its own independent,
// reproducible substream, so aggregation order never affects the draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    return h;
  }

  // Derived substream: seed XOR label-hash XOR (odd constant * (trial+1)),
  // passed once through the mixer so nearby trials decorrelate.
  static Rng stream(std::uint64_t seed, std::string_view label,
                    std::uint64_t trial) {
    const std::uint64_t raw =
        seed ^ fnv1a(label) ^ (0xD1B54A32D192ED03ULL * (trial + 1));
    return Rng(mix64(raw));
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never 0, so logarithms stay finite.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double next_gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = next_unit();
    const double v = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 6.28318530717958647692 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform integer in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pgb
