#pragma once

#include "dupcut/label_set.hpp"

#include <cstdint>
#include <random>

namespace dupcut {

// All randomness flows through std::mt19937_64, whose output sequence is
// pinned by the C++ standard, so a seed reproduces bit-for-bit everywhere.
// The helpers below avoid std::*_distribution on purpose: distribution
// algorithms are implementation-defined and would break cross-platform
// determinism.

/// splitmix64 step; used to derive independent sub-seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform integer in [0, n) by rejection; n must be positive.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& rng, double p) { return next_unit(rng) < p; }

/// Each element of the universe is included independently with probability 1/2.
inline LabelSet random_subset(std::mt19937_64& rng, std::size_t universe) {
  LabelSet s(universe);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < universe; ++i) {
    if (i % 64 == 0) word = rng();
    if ((word >> (i % 64)) & 1u) s.set(i);
  }
  return s;
}

}  // namespace dupcut
