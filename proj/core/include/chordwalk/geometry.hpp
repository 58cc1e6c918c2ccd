#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "chordwalk/types.hpp"

namespace chordwalk {

/// Parameter interval [t_min, t_max] such that x + t e stays in the body.
/// Always t_min <= 0 <= t_max; equal endpoints mark a degenerate chord.
struct Chord {
  double t_min = 0.0;
  double t_max = 0.0;

  double length() const { return t_max - t_min; }
  bool degenerate() const { return !(t_max > t_min); }
};

/// Geometric constants of a body: ball(x_star, r) inside, ball(x_star, R)
/// outside. `basis` holds the l unit move directions as columns; `k` is the
/// accessibility constant with respect to that basis, when one is known.
struct BodyMetadata {
  int d = 0;
  Vector x_star;
  double r = 0.0;
  double R = 0.0;
  std::optional<long> k;
  std::optional<Matrix> basis;
  /// Cleared for lifted bodies whose density is not concave. Their
  /// axis-parallel chords are intervals but chords along other directions
  /// may have gaps.
  bool convex = true;

  std::optional<long> l() const {
    if (!basis) return std::nullopt;
    return static_cast<long>(basis->cols());
  }
  double ratio() const { return r / R; }
};

enum class BodyKind {
  ball,
  box,
  simplex,
  stochastic,
  birkhoff,
  density,
  ppt,
  lifted,
  polytope,
};

const char* to_string(BodyKind kind);

/// A compact convex body presented in a full-dimensional chart of R^d.
/// Immutable after construction; safe to share across threads.
class Body {
 public:
  virtual ~Body() = default;

  const BodyMetadata& metadata() const { return meta_; }
  int dim() const { return meta_.d; }
  BodyKind kind() const { return kind_; }
  /// Size parameter of catalogue bodies (d, N or K); 0 otherwise.
  int param() const { return param_; }
  /// Human-readable label, e.g. "birkhoff:n=3".
  const std::string& label() const { return label_; }

  /// Closed-body membership up to the body's tolerance.
  bool contains(const Vector& x) const;

  /// Maximal chord through member x along nonzero e.
  Chord chord(const Vector& x, const Vector& e) const;

  /// Ambient representation (probabilities, matrix entries, re/im pairs),
  /// or nothing when the chart is the ambient space itself.
  virtual std::optional<Vector> ambient(const Vector& x) const;

 protected:
  Body(BodyKind kind, int param, std::string label, BodyMetadata meta);

  virtual bool member(const Vector& x) const = 0;
  virtual Chord line_chord(const Vector& x, const Vector& e) const = 0;

  void check_dim(const Vector& x, const char* what) const;

 private:
  BodyKind kind_;
  int param_;
  std::string label_;
  BodyMetadata meta_;
};

using BodyPtr = std::shared_ptr<const Body>;
using Membership = std::function<bool(const Vector&)>;
using LineMembership = std::function<bool(double)>;

/// Chord of a convex set along a parameterized line, given only membership.
/// Brackets each endpoint by doubling from t_hint (capped at t_cap), then
/// bisects until the bracket is no wider than tol. The returned endpoints are
/// members; t_min - tol and t_max + tol are not (unless degenerate).
Chord chord_bisect_line(const LineMembership& inside, double t_hint,
                        double t_cap, double tol = tolerance::kBisect);

/// Vector form of chord_bisect_line for x + t e.
Chord chord_bisect(const Membership& membership, const Vector& x,
                   const Vector& e, double t_hint, double t_cap,
                   double tol = tolerance::kBisect);

/// Affine map from a chart to an ambient space: ambient = origin + frame x.
struct AffineChart {
  Vector origin;
  Matrix frame;

  Vector to_ambient(const Vector& x) const { return origin + frame * x; }
};

/// Polytope {x : A x <= b}. Rows are normalized internally so the slack
/// tolerance is a distance. Chords are computed in closed form.
BodyPtr make_polytope(std::string label, Matrix A, Vector b, BodyMetadata meta,
                      std::optional<AffineChart> chart = std::nullopt,
                      BodyKind kind = BodyKind::polytope, int param = 0);

/// Density known up to a constant, evaluated on the inner body's chart.
using DensityFunction = std::function<double(const Vector&)>;

/// Region under the graph of f over `inner`:
///   {(x, y) : x in inner, 0 < y <= f(x)}.
/// For quasi-concave f the axis-parallel chords are intervals; chords in
/// every direction are intervals only when f is concave, which the caller
/// asserts with `concave`. Chords are bisected; r and R are derived from
/// inner's metadata, the minimum of f over probes of the inscribed ball, and
/// f_max.
BodyPtr lift_density(BodyPtr inner, DensityFunction f, double f_max,
                     std::string label = "lifted", bool concave = false);

}  // namespace chordwalk
