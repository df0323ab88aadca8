// Counter-based random generator for reproducible, splittable sampling.
//
// Every draw is a pure function of (seed, counter), so disjoint counter
// ranges can be handed to workers with no shared state and no warm-up, and
// a census re-run with the same seed is bit-identical regardless of the
// worker count. The mixing function is the splitmix64 finalizer with its
// published constants.
#pragma once

#include <cstdint>

namespace coprime {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// The i-th word of the stream (stateless: safe to call in any order).
  std::uint64_t at(std::uint64_t i) const {
    std::uint64_t z = seed_ + (i + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// The i-th draw reduced to [0, bound) by the multiply-shift reduction.
  /// The reduction is biased by at most bound/2^64, which is far below
  /// anything the confidence intervals can resolve at the bounds (< 2^21)
  /// used here; in exchange every draw consumes exactly one counter.
  std::uint32_t bounded(std::uint64_t i, std::uint32_t bound) const {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(at(i)) * bound) >> 64);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace coprime
