#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace rainbow {

/// 64-bit seed feeding a deterministic pseudorandom stream.
using Seed = std::uint64_t;

/// SplitMix64 finalizer; the mixing function behind every seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent child seed from a parent and a list of tags, so
/// that adding a draw to one sub-task never perturbs another.
Seed derive_seed(Seed parent, std::initializer_list<std::uint64_t> tags);

/// Seeded random stream. The engine is std::mt19937_64 (seeded through
/// SplitMix64); bounded draws use rejection sampling rather than
/// std::uniform_int_distribution so streams are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(Seed seed);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rainbow
