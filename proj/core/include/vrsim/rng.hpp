#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vrsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines a base seed with a stream id into one well-mixed seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x517cc1b727220a95ULL));
}

/// Deterministic RNG with hand-rolled distributions so draws are
/// bit-reproducible regardless of standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}
  Rng(std::uint64_t base, std::uint64_t stream) : eng_(mix_seed(base, stream)) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform draw in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(index(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, n) via 128-bit multiply (no modulo bias worth caring about here).
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

  /// Exponential with the given mean (unit-mean Rayleigh power gains use mean=1).
  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace vrsim
