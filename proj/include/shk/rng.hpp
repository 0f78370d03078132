#pragma once

#include <cstdint>

#include "shk/rational.hpp"

namespace shk {

// Deterministic 64-bit generator (splitmix64). Hand-rolled rather than
// std::mt19937 so that seeded runs reproduce byte-identical reports on
// every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t n) { return next() % n; }

  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

 private:
  uint64_t state_;
};

// Small random rational, numerator in [-bound, bound], denominator in [1, maxden].
inline Rational random_rational(SplitMix64& rng, long bound, long maxden) {
  return Rational(rng.range(-bound, bound), rng.range(1, maxden));
}

inline Rational random_positive_rational(SplitMix64& rng, long bound, long maxden) {
  return Rational(rng.range(1, bound), rng.range(1, maxden));
}

}  // namespace shk
