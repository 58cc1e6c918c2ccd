#pragma once

#include "chordwalk/geometry.hpp"
#include "chordwalk/sampler.hpp"

namespace chordwalk {

/// Prefactor convention for the random-direction minorization constant.
enum class BoundVariant {
  /// theta = (2/d) [(R/r + 1)^{d-1} (R/r)]^{-1}, as published.
  as_stated,
  /// Same with prefactor 1/d, which is what b_d / c_d = 1/d gives.
  conservative,
};

const char* to_string(BoundVariant variant);
BoundVariant parse_variant(const std::string& text);

/// Doeblin constants: Q^M(x, .) >= theta nu(.), giving
/// ||Q^n mu - mu_*||_TV <= C alpha^n with alpha = (1 - theta)^{1/M},
/// C = 2 / (1 - theta).
///
/// theta is often far below the double range (birkhoff:n=6 has
/// log10 theta < -600), so log_theta is kept alongside it.
struct RateBound {
  long M = 1;
  double theta = 0.0;
  double log_theta = 0.0;
  double alpha = 0.0;
  double C = 2.0;
  BoundVariant variant = BoundVariant::as_stated;
};

double unit_ball_volume(int d);
double log_unit_ball_volume(int d);
/// Surface area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2).
double sphere_surface(int d);

/// M = k + d, theta = b_d l^{-(k+d)} mu^{k+d}, mu = r / R.
RateBound bound_fixed_basis(int d, long k, long l, double mu);

/// M = 1, theta = (p/d) [(1/mu + 1)^{d-1} / mu]^{-1}; p = 2 (as_stated)
/// or 1 (conservative). Requires d >= 2.
RateBound bound_random_direction(int d, double mu,
                                 BoundVariant variant = BoundVariant::conservative);

/// Dispatches on the body's metadata. Fixed-basis bounds need k and a basis.
RateBound body_bound(const Body& body, Algorithm algorithm,
                     BoundVariant variant = BoundVariant::conservative);

/// C alpha^n, clamped to 2.
double tv_envelope(const RateBound& bound, double n);

/// Smallest n with C alpha^n <= eps, as a real number (it may exceed the
/// range of any integer type); +inf when alpha rounds to 1 at the log level.
double steps_to_tolerance(const RateBound& bound, double eps);
/// log10 of the unrounded step count; -inf when no steps are needed.
double log10_steps_to_tolerance(const RateBound& bound, double eps);

}  // namespace chordwalk
