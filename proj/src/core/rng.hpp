#pragma once

#include <cstdint>

namespace polar {

// splitmix64: tiny, seedable, and (unlike the std:: distributions) produces the
// same stream on every platform, which the bit-identical-output guarantees
// depend on.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  int next_sign() { return (next() >> 63) ? 1 : -1; }

  bool next_bool() { return (next() >> 63) != 0; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

// Decorrelated per-stream seed derived from a master seed, so parallel trials
// can each own an independent generator while staying reproducible.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream) {
  return SplitMix64::mix(master ^ SplitMix64::mix(stream + 0x9E3779B97F4A7C15ULL));
}

}  // namespace polar
