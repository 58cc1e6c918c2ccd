#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "chordwalk/geometry.hpp"
#include "chordwalk/random.hpp"

namespace chordwalk {

// Ground-truth samplers used to validate chain output.

/// Uniform in the ball of radius r about the origin: Gaussian direction
/// times r U^{1/d}.
Vector exact_ball(int d, double r, RandomSource& rng);

/// Uniform in [-1/2, 1/2]^d.
Vector exact_box(int d, RandomSource& rng);

/// Dirichlet(1, ..., 1) in ambient coordinates: N standard exponentials
/// divided by their sum.
Vector exact_simplex(int N, RandomSource& rng);

/// Hilbert-Schmidt distributed density matrix: G G^dag / Tr(G G^dag) with
/// G an N x N complex Ginibre matrix.
CMatrix hilbert_schmidt_state(int N, RandomSource& rng);

using Proposal = std::function<Vector(RandomSource&)>;

inline constexpr std::uint64_t kDefaultMaxTries = 10'000'000;

struct RejectionResult {
  Vector value;
  std::uint64_t tries = 0;
};

/// First proposal accepted by `accept`. The proposal must be uniform on a
/// superset of the target. Throws RejectionExhausted after max_tries.
RejectionResult rejection(const Proposal& proposal, const Membership& accept,
                          std::uint64_t max_tries, RandomSource& rng);

struct AcceptanceRate {
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;

  double rate() const;
  /// Binomial standard error of rate().
  double standard_error() const;
};

/// Exact or rejection sampler for one body, in that body's chart.
/// Keeps acceptance counters, so each thread should own its copy.
class OracleSampler {
 public:
  OracleSampler(std::string description, Proposal proposal,
                Membership accept = {}, std::uint64_t max_tries = kDefaultMaxTries);

  Vector draw(RandomSource& rng);
  /// d x n matrix, one draw per column.
  Matrix draw_many(std::size_t n, RandomSource& rng);

  bool exact() const { return !accept_; }
  const std::string& description() const { return description_; }
  const AcceptanceRate& acceptance() const { return stats_; }

 private:
  std::string description_;
  Proposal proposal_;
  Membership accept_;
  std::uint64_t max_tries_;
  AcceptanceRate stats_;
};

/// ball, box, simplex, stochastic: exact. birkhoff (N <= 4): uniform free
/// block, accepted when the completion is non-negative. density (N <= 3):
/// uniform Bloch ball of radius R, accepted when positive. ppt (K = 2):
/// Hilbert-Schmidt states accepted when the partial transpose is positive.
/// Anything else: nullopt. The sampler refers to `body`, which must
/// outlive it.
std::optional<OracleSampler> oracle_for(const Body& body);

}  // namespace chordwalk
