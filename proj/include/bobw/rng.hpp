#pragma once

#include <cstdint>

#include "bobw/rational.hpp"

namespace bobw {

// SplitMix64. The state advance and output mix are fixed so that every seeded
// run is bit-reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next();
  // Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  BigInt uniform_below(const BigInt& bound);
  // True with probability p, p in [0, 1], exactly.
  bool bernoulli(const Rational& p);
  double uniform01();

 private:
  std::uint64_t state_;
};

// Seed for replica r of a batch.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replica);

}  // namespace bobw
