#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chordwalk/geometry.hpp"
#include "chordwalk/random.hpp"

namespace chordwalk {

enum class Algorithm {
  fixed_basis,       ///< direction drawn uniformly from the body's basis
  random_direction,  ///< direction uniform on the unit sphere
};

const char* to_string(Algorithm algorithm);
/// Accepts "fixed_basis" and "random_direction".
Algorithm parse_algorithm(const std::string& text);

struct ChainConfig {
  Algorithm algorithm = Algorithm::random_direction;
  std::size_t steps = 1;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  /// Defaults to the body's x*.
  std::optional<Vector> start;
};

/// Uniform on the unit sphere S^{d-1}: d standard normals, normalized.
Vector sample_direction(int d, RandomSource& rng);

// Draw order per step is fixed: first the direction (one index draw, or d
// normals), then one uniform u in [0, 1). The new point is
// x + (t_min + u (t_max - t_min)) e. A degenerate chord still consumes u and
// returns x unchanged.

Vector step_fixed_basis(const Body& body, const Vector& x, RandomSource& rng);
Vector step_random_direction(const Body& body, const Vector& x, RandomSource& rng);
Vector step(const Body& body, Algorithm algorithm, const Vector& x, RandomSource& rng);

/// Receives (step index counted from the chain start, point).
using ChainSink = std::function<void(std::size_t, const Vector&)>;

/// Runs burn_in + steps transitions from the start point and emits every
/// thin-th point after burn-in: floor(steps / thin) points in total.
/// Uses config.seed directly.
void run_chain(const Body& body, const ChainConfig& config, const ChainSink& sink);

/// Collected form of run_chain: a d x floor(steps/thin) matrix, one point
/// per column.
Matrix run_chain(const Body& body, const ChainConfig& config);

/// Runs `chains` independent chains concurrently. Chain i is seeded with
/// derive_seed(config.seed, i). Results are ordered by chain index.
std::vector<Matrix> run_chains(const Body& body, const ChainConfig& config,
                               int chains);

/// Throws if the configuration cannot be run on the body.
void validate(const Body& body, const ChainConfig& config);

}  // namespace chordwalk
