#include "bobw/rng.hpp"

#include "bobw/error.hpp"

namespace bobw {

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

std::uint64_t SplitMix64::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("uniform_below: bound must be positive");
  // Reject the low (2^64 mod bound) outcomes so the rest split evenly.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

BigInt SplitMix64::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw PreconditionError("uniform_below: bound must be positive");
  if (bound.fits_ulong_p() && sizeof(unsigned long) == 8)
    return BigInt(static_cast<unsigned long>(uniform_below(static_cast<std::uint64_t>(bound.get_ui()))));
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t chunks = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (chunks - 1);
  for (;;) {
    BigInt r = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
      std::uint64_t word = next();
      if (c == 0 && top_bits < 64) word >>= (64 - top_bits);
      r <<= 64;
      BigInt w;
      mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      r += w;
    }
    if (r < bound) return r;
  }
}

bool SplitMix64::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw PreconditionError("bernoulli: probability outside [0,1]");
  if (p == 0) return false;
  if (p == 1) return true;
  return uniform_below(p.get_den()) < p.get_num();
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replica) {
  return SplitMix64::mix(seed ^ replica);
}

}  // namespace bobw
