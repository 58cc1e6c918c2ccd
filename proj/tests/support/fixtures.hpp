#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "chordwalk/descriptor.hpp"
#include "chordwalk/geometry.hpp"
#include "chordwalk/sampler.hpp"

namespace chordwalk::testing {

// Triangle with vertices A = (0,0), B = (2,1), C = (1,2), centroid (1,1).
// The axis basis cannot leave corner A; the edge-adapted basis
// f1 = (2,1)/sqrt(5), f2 = (1,2)/sqrt(5) can.
inline const Vector kCornerA = Vector::Zero(2);

inline BodyPtr make_triangle(bool adapted) {
  Matrix A(3, 2);
  A << 1.0, -2.0,   // below AB: x - 2y <= 0
      -2.0, 1.0,    // right of AC: y - 2x <= 0
      1.0, 1.0;     // below BC: x + y <= 3
  Vector b(3);
  b << 0.0, 0.0, 3.0;
  BodyMetadata meta;
  meta.d = 2;
  meta.x_star = Vector::Ones(2);
  meta.r = 1.0 / std::sqrt(5.0);
  meta.R = std::sqrt(2.0);
  Matrix basis(2, 2);
  if (adapted) {
    basis << 2.0, 1.0,
             1.0, 2.0;
    basis /= std::sqrt(5.0);
    meta.k = 2;
  } else {
    basis.setIdentity();
  }
  meta.basis = basis;
  return make_polytope(adapted ? "triangle:adapted" : "triangle:axes", A, b, meta);
}

// Bodies every geometric property test runs over.
inline std::vector<std::string> catalogue() {
  return {"ball:d=1",       "ball:d=2",          "ball:d=5",      "box:d=1",
          "box:d=3",        "box:d=6",           "simplex:n=2",   "simplex:n=3",
          "simplex:n=5",    "stochastic:n=2",    "stochastic:n=3", "birkhoff:n=2",
          "birkhoff:n=3",   "birkhoff:n=4",      "density:n=2",   "density:n=3",
          "ppt:k=2",        "lifted:f=gauss/ball:d=2", "lifted:f=tent/simplex:n=3",
          "lifted:f=uniform/box:d=1"};
}

// Members spread over the body: a random-direction chain from x*, or a
// fixed-basis one on a non-convex lift.
inline Matrix member_points(const Body& body, std::size_t n, std::uint64_t seed) {
  ChainConfig config;
  config.steps = n;
  config.seed = seed;
  if (!body.metadata().convex) config.algorithm = Algorithm::fixed_basis;
  return run_chain(body, config);
}

}  // namespace chordwalk::testing
