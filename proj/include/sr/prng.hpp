#pragma once

#include "sr/rational.hpp"

#include <cstdint>

namespace sr {

/**
 * Counter-based deterministic generator: output i is the SplitMix64
 * finalizer applied to seed + i * 2^64/phi (Steele, Lea & Flood's
 * constants). Identical seeds give identical streams on every platform,
 * which golden corpora and seeded test suites rely on.
 */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, k). Modulo bias is ~k/2^64, irrelevant at our sizes.
  std::uint64_t below(std::uint64_t k) { return next() % k; }

  /// True with probability exactly p (comparing a 64-bit draw against p).
  bool bernoulli(const Rat& p) {
    static const Rat two64 = Rat(Int(1) << 64);
    return Rat(Int(next())) < p * two64;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace sr
