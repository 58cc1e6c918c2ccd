#include "chordwalk/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace chordwalk {

const char* to_string(BoundVariant variant) {
  return variant == BoundVariant::as_stated ? "as_stated" : "conservative";
}

BoundVariant parse_variant(const std::string& text) {
  if (text == "as_stated") return BoundVariant::as_stated;
  if (text == "conservative") return BoundVariant::conservative;
  throw std::invalid_argument("unknown bound variant '" + text +
                              "' (expected as_stated or conservative)");
}

double log_unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
  const double half = 0.5 * d;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

double unit_ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
  const double half = 0.5 * d;
  if (d <= 170) return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
  return std::exp(log_unit_ball_volume(d));
}

double sphere_surface(int d) {
  if (d < 2) throw std::invalid_argument("sphere_surface: d must be >= 2");
  const double half = 0.5 * d;
  if (d <= 170) return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
  return std::exp(std::log(2.0) + half * std::log(std::numbers::pi) - std::lgamma(half));
}

namespace {

// Fills alpha and C from theta / log_theta.
RateBound finish(long M, double theta, double log_theta, BoundVariant variant) {
  if (!(log_theta < 0.0)) {
    throw std::domain_error("rate bound: theta = exp(" + std::to_string(log_theta) +
                            ") is not below 1");
  }
  RateBound b;
  b.M = M;
  b.theta = theta;
  b.log_theta = log_theta;
  b.alpha = std::exp(std::log1p(-theta) / static_cast<double>(M));
  b.C = 2.0 / (1.0 - theta);
  b.variant = variant;
  return b;
}

// Direct product when it is representable, else exp of the log form.
double theta_from(double direct, double log_theta) {
  if (log_theta > -700.0 && std::isfinite(direct) && direct > 0.0) return direct;
  return std::exp(log_theta);
}

}  // namespace

RateBound bound_fixed_basis(int d, long k, long l, double mu) {
  if (d < 1 || k < 1 || l < 1) {
    throw std::invalid_argument("bound_fixed_basis: d, k and l must be positive");
  }
  if (!(mu > 0.0) || mu > 1.0) {
    throw std::invalid_argument("bound_fixed_basis: mu = r/R must lie in (0, 1]");
  }
  const long M = k + d;
  const double power = static_cast<double>(M);
  const double log_theta = log_unit_ball_volume(d) + power * (std::log(mu) - std::log(static_cast<double>(l)));
  double direct = 0.0;
  if (log_theta > -700.0) {
    direct = unit_ball_volume(d) * std::pow(mu / static_cast<double>(l), power);
  }
  return finish(M, theta_from(direct, log_theta), log_theta, BoundVariant::as_stated);
}

RateBound bound_random_direction(int d, double mu, BoundVariant variant) {
  if (d < 2) throw std::invalid_argument("bound_random_direction: d must be >= 2");
  if (!(mu > 0.0) || mu > 1.0) {
    throw std::invalid_argument("bound_random_direction: mu = r/R must lie in (0, 1]");
  }
  const double prefactor = (variant == BoundVariant::as_stated ? 2.0 : 1.0) / d;
  const double ratio = 1.0 / mu;
  const double log_theta = std::log(prefactor) - (d - 1) * std::log1p(ratio) - std::log(ratio);
  double direct = 0.0;
  if (log_theta > -700.0) {
    direct = prefactor / (std::pow(ratio + 1.0, d - 1) * ratio);
  }
  return finish(1, theta_from(direct, log_theta), log_theta, variant);
}

RateBound body_bound(const Body& body, Algorithm algorithm, BoundVariant variant) {
  const auto& m = body.metadata();
  if (algorithm == Algorithm::random_direction) {
    if (!m.convex) throw std::invalid_argument(body.label() + ": body is not convex");
    return bound_random_direction(m.d, m.ratio(), variant);
  }
  if (!m.k || !m.basis) {
    throw AccessibilityError(body.label() +
                             ": no accessibility constant; only random_direction applies");
  }
  return bound_fixed_basis(m.d, *m.k, *m.l(), m.ratio());
}

double tv_envelope(const RateBound& bound, double n) {
  if (n < 0.0) throw std::invalid_argument("tv_envelope: n must be >= 0");
  if (n == 0.0) return std::min(bound.C, 2.0);
  const double log_alpha = std::log1p(-bound.theta) / static_cast<double>(bound.M);
  const double log_value = std::log(bound.C) + n * log_alpha;
  return std::min(2.0, std::exp(log_value));
}

namespace {

// Natural log of the real-valued n solving C alpha^n = eps.
double log_steps(const RateBound& bound, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("steps_to_tolerance: eps must be > 0");
  const double gap = std::log(bound.C) - std::log(eps);
  if (gap <= 0.0) return -std::numeric_limits<double>::infinity();
  // -log(alpha) = -log1p(-theta)/M; for tiny theta this is theta/M.
  double log_rate;
  if (bound.log_theta > -30.0) {
    log_rate = std::log(-std::log1p(-bound.theta)) - std::log(static_cast<double>(bound.M));
  } else {
    log_rate = bound.log_theta - std::log(static_cast<double>(bound.M));
  }
  return std::log(gap) - log_rate;
}

}  // namespace

double steps_to_tolerance(const RateBound& bound, double eps) {
  const double log_n = log_steps(bound, eps);
  if (log_n > 709.0) return std::numeric_limits<double>::infinity();
  return std::ceil(std::exp(log_n));
}

double log10_steps_to_tolerance(const RateBound& bound, double eps) {
  return log_steps(bound, eps) / std::log(10.0);
}

}  // namespace chordwalk
