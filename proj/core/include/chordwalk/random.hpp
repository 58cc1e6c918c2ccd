#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace chordwalk {

// Child stream seed: splitmix64(parent ^ splitmix64(index + golden gamma)).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// Seedable pseudo-random stream. Identical seeds give identical streams
/// within one build. Not thread-safe; each chain owns its own source.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1), 53 random mantissa bits.
  double uniform();
  double normal();
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t index(std::size_t n);

  /// Independent stream for chain `stream`, seeded by derive_seed.
  RandomSource spawn(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace chordwalk
