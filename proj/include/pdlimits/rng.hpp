#pragma once

#include <cstdint>
#include <random>

namespace pdl {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic RNG. mt19937_64 is fully specified by the standard and we
/// derive uniforms from raw bits ourselves, so streams reproduce bit-exactly
/// on any platform.  Replicate streams come from (base_seed, stream_index)
/// so parallel schedules cannot change results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static Rng stream(std::uint64_t base_seed, std::uint64_t stream_index) {
    std::uint64_t s = base_seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
    // a few mixing rounds so nearby stream indices decorrelate
    std::uint64_t mixed = splitmix64(s);
    mixed ^= splitmix64(s);
    return Rng(mixed);
  }

  std::uint64_t bits() { return eng_(); }

  /// uniform on [0,1) with 53 random bits
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// uniform integer in [0, n), unbiased via rejection
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pdl
