#include "chordwalk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace chordwalk {

const char* to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::ball: return "ball";
    case BodyKind::box: return "box";
    case BodyKind::simplex: return "simplex";
    case BodyKind::stochastic: return "stochastic";
    case BodyKind::birkhoff: return "birkhoff";
    case BodyKind::density: return "density";
    case BodyKind::ppt: return "ppt";
    case BodyKind::lifted: return "lifted";
    case BodyKind::polytope: return "polytope";
  }
  return "unknown";
}

//---------------------------------------------------------------------------//
// Body
//---------------------------------------------------------------------------//
Body::Body(BodyKind kind, int param, std::string label, BodyMetadata meta)
    : kind_(kind), param_(param), label_(std::move(label)), meta_(std::move(meta)) {
  if (meta_.d < 1 || meta_.x_star.size() != meta_.d) {
    throw BodyConstructionError(label_ + ": inconsistent dimension metadata");
  }
  if (!(meta_.r > 0.0) || !(meta_.r <= meta_.R)) {
    throw BodyConstructionError(label_ + ": radii must satisfy 0 < r <= R");
  }
  if (meta_.basis && meta_.basis->rows() != meta_.d) {
    throw BodyConstructionError(label_ + ": basis vectors have wrong length");
  }
}

void Body::check_dim(const Vector& x, const char* what) const {
  if (x.size() != meta_.d) {
    throw DimensionError(label_ + ": " + what + " has length " +
                         std::to_string(x.size()) + ", body dimension is " +
                         std::to_string(meta_.d));
  }
}

bool Body::contains(const Vector& x) const {
  check_dim(x, "point");
  return member(x);
}

Chord Body::chord(const Vector& x, const Vector& e) const {
  check_dim(x, "point");
  check_dim(e, "direction");
  if (!(e.squaredNorm() > 0.0)) {
    throw std::invalid_argument(label_ + ": chord direction is zero");
  }
  return line_chord(x, e);
}

std::optional<Vector> Body::ambient(const Vector&) const { return std::nullopt; }

//---------------------------------------------------------------------------//
// Bisection
//---------------------------------------------------------------------------//
namespace {

// Largest member parameter along one ray, t >= 0 times `sign`.
double bisect_endpoint(const LineMembership& inside, double sign, double t_hint,
                       double t_cap, double tol) {
  double in = 0.0;
  double out = std::min(t_hint, t_cap);
  while (inside(sign * out)) {
    in = out;
    if (out >= t_cap) {
      throw BracketError("chord bracket exceeded cap " + std::to_string(t_cap));
    }
    out = std::min(2.0 * out, t_cap);
  }
  for (int it = 0; it < tolerance::kBisectMaxIterations && out - in > tol; ++it) {
    const double mid = 0.5 * (in + out);
    if (inside(sign * mid)) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

}  // namespace

Chord chord_bisect_line(const LineMembership& inside, double t_hint,
                        double t_cap, double tol) {
  if (!(t_hint > 0.0) || !(tol > 0.0) || !(t_cap > 0.0)) {
    throw std::invalid_argument("chord_bisect: t_hint, t_cap and tol must be positive");
  }
  if (!inside(0.0)) {
    throw OutsideBodyError("chord_bisect: starting point is not a member");
  }
  const double hi = bisect_endpoint(inside, +1.0, t_hint, t_cap, tol);
  const double lo = bisect_endpoint(inside, -1.0, t_hint, t_cap, tol);
  return {-lo, hi};
}

Chord chord_bisect(const Membership& membership, const Vector& x,
                   const Vector& e, double t_hint, double t_cap, double tol) {
  if (x.size() != e.size()) {
    throw DimensionError("chord_bisect: point and direction lengths differ");
  }
  Vector probe(x.size());
  return chord_bisect_line(
      [&](double t) {
        probe = x + t * e;
        return membership(probe);
      },
      t_hint, t_cap, tol);
}

//---------------------------------------------------------------------------//
// Polytope
//---------------------------------------------------------------------------//
namespace {

class PolytopeBody final : public Body {
 public:
  PolytopeBody(BodyKind kind, int param, std::string label, Matrix A, Vector b,
               BodyMetadata meta, std::optional<AffineChart> chart)
      : Body(kind, param, std::move(label), std::move(meta)),
        A_(std::move(A)),
        b_(std::move(b)),
        chart_(std::move(chart)) {
    if (A_.cols() != dim() || A_.rows() != b_.size() || A_.rows() == 0) {
      throw BodyConstructionError(this->label() + ": constraint shape mismatch");
    }
    for (Eigen::Index i = 0; i < A_.rows(); ++i) {
      const double n = A_.row(i).norm();
      if (!(n > 0.0)) {
        throw BodyConstructionError(this->label() + ": zero constraint row");
      }
      A_.row(i) /= n;
      b_[i] /= n;
    }
  }

  std::optional<Vector> ambient(const Vector& x) const override {
    if (!chart_) return std::nullopt;
    check_dim(x, "point");
    return chart_->to_ambient(x);
  }

 protected:
  bool member(const Vector& x) const override {
    return ((A_ * x - b_).array() <= tolerance::kLinear).all();
  }

  Chord line_chord(const Vector& x, const Vector& e) const override {
    const Vector slack = b_ - A_ * x;
    const Vector rate = A_ * e;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < slack.size(); ++i) {
      if (slack[i] < -tolerance::kLinear) {
        throw OutsideBodyError(label() + ": chord origin violates a constraint");
      }
      const double s = std::max(slack[i], 0.0);
      const double g = rate[i];
      if (g > 0.0) {
        hi = std::min(hi, s / g);
      } else if (g < 0.0) {
        lo = std::max(lo, s / g);
      }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw BracketError(label() + ": unbounded chord");
    }
    return {lo, hi};
  }

 private:
  Matrix A_;
  Vector b_;
  std::optional<AffineChart> chart_;
};

//---------------------------------------------------------------------------//
// Lifted density
//---------------------------------------------------------------------------//
class LiftedBody final : public Body {
 public:
  LiftedBody(std::string label, BodyMetadata meta, BodyPtr inner,
             DensityFunction f)
      : Body(BodyKind::lifted, 0, std::move(label), std::move(meta)),
        inner_(std::move(inner)),
        f_(std::move(f)) {}

  const Body& inner() const { return *inner_; }

 protected:
  bool member(const Vector& x) const override {
    const int n = inner_->dim();
    const double y = x[n];
    if (!(y > 0.0)) return false;
    const Vector head = x.head(n);
    if (!inner_->contains(head)) return false;
    return y <= f_(head);
  }

  Chord line_chord(const Vector& x, const Vector& e) const override {
    const auto& m = metadata();
    return chord_bisect([this](const Vector& p) { return member(p); }, x, e,
                        m.r, 2.0 * m.R);
  }

 private:
  BodyPtr inner_;
  DensityFunction f_;
};

}  // namespace

BodyPtr make_polytope(std::string label, Matrix A, Vector b, BodyMetadata meta,
                      std::optional<AffineChart> chart, BodyKind kind, int param) {
  return std::make_shared<PolytopeBody>(kind, param, std::move(label),
                                        std::move(A), std::move(b),
                                        std::move(meta), std::move(chart));
}

BodyPtr lift_density(BodyPtr inner, DensityFunction f, double f_max,
                     std::string label, bool concave) {
  if (!inner) throw std::invalid_argument("lift_density: null inner body");
  if (!(f_max > 0.0)) {
    throw BodyConstructionError("lift_density: f_max must be positive");
  }
  const auto& in = inner->metadata();
  const int d = in.d;

  // Probe f at the centre, the 2d axis points and (for d <= 10) the 2^d
  // diagonal points of the inscribed ball; the smallest value sets the
  // height of the inscribed cylinder.
  const double f_centre = f(in.x_star);
  if (!(f_centre > 0.0)) {
    throw BodyConstructionError("lift_density: density is not positive at x*");
  }
  double f_floor = f_centre;
  const double probe_radius = in.r * (1.0 - 1e-9);
  for (int i = 0; i < d; ++i) {
    for (double s : {-1.0, 1.0}) {
      Vector p = in.x_star;
      p[i] += s * probe_radius;
      f_floor = std::min(f_floor, f(p));
    }
  }
  if (d <= 10) {
    const double diag = probe_radius / std::sqrt(static_cast<double>(d));
    for (long mask = 0; mask < (1L << d); ++mask) {
      Vector p = in.x_star;
      for (int i = 0; i < d; ++i) p[i] += ((mask >> i) & 1) ? diag : -diag;
      f_floor = std::min(f_floor, f(p));
    }
  }
  if (!(f_floor > 0.0)) {
    throw BodyConstructionError(
        "lift_density: density vanishes on the inscribed ball of the inner body");
  }
  if (f_floor > f_max) {
    throw BodyConstructionError("lift_density: f exceeds f_max");
  }

  BodyMetadata meta;
  meta.d = d + 1;
  meta.x_star = Vector::Zero(d + 1);
  meta.x_star.head(d) = in.x_star;
  meta.x_star[d] = 0.5 * f_floor;
  meta.r = std::min(in.r, 0.5 * f_floor);
  meta.R = std::hypot(in.R, f_max - 0.5 * f_floor);
  meta.basis = Matrix::Identity(d + 1, d + 1);
  meta.convex = concave;

  return std::make_shared<LiftedBody>(std::move(label), std::move(meta),
                                      std::move(inner), std::move(f));
}

}  // namespace chordwalk
