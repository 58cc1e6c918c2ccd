#include <cmath>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "chordwalk/bodies.hpp"
#include "chordwalk/bounds.hpp"
#include "chordwalk/descriptor.hpp"
#include "chordwalk/diagnostics.hpp"
#include "chordwalk/quantum.hpp"
#include "chordwalk/sampler.hpp"
#include "fixtures.hpp"

using namespace chordwalk;
using chordwalk::testing::catalogue;
using chordwalk::testing::member_points;

namespace {

constexpr double kTol = tolerance::kBisect;

Vector unit(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x[i++] = c;
  return x.normalized();
}

bool closed_form_chords(const Body& body) {
  switch (body.kind()) {
    case BodyKind::ball:
    case BodyKind::box:
    case BodyKind::simplex:
    case BodyKind::stochastic:
    case BodyKind::birkhoff:
    case BodyKind::polytope:
      return true;
    default:
      return false;
  }
}

}  // namespace

TEST(ChordBisect, UnitDisc) {
  const Membership disc = [](const Vector& x) { return x.squaredNorm() <= 1.0; };
  const Chord c = chord_bisect(disc, Vector::Zero(2), unit({0, 1}), 0.5, 4.0, 1e-10);
  EXPECT_NEAR(c.t_min, -1.0, 1e-9);
  EXPECT_NEAR(c.t_max, 1.0, 1e-9);
}

TEST(ChordBisect, QubitPositivity) {
  const auto basis = su_generators(2);
  const Membership positive = [&](const Vector& tau) {
    return is_positive(bloch_to_density(tau, basis));
  };
  RandomSource rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector e = sample_direction(3, rng);
    const Chord c = chord_bisect(positive, Vector::Zero(3), e, 0.1, 2.0, 1e-10);
    EXPECT_NEAR(c.t_min, -1.0 / std::sqrt(2.0), 1e-8);
    EXPECT_NEAR(c.t_max, 1.0 / std::sqrt(2.0), 1e-8);
  }
}

TEST(ChordBisect, TriangleCornerIsDegenerate) {
  const auto triangle = chordwalk::testing::make_triangle(false);
  const Membership inside = [&](const Vector& x) { return triangle->contains(x); };
  for (int axis = 0; axis < 2; ++axis) {
    const Vector e = Vector::Unit(2, axis);
    const Chord c = chord_bisect(inside, chordwalk::testing::kCornerA, e, 0.5, 4.0, 1e-10);
    EXPECT_EQ(c.t_min, 0.0);
    EXPECT_EQ(c.t_max, 0.0);
    EXPECT_TRUE(c.degenerate());
    const Chord exact = triangle->chord(chordwalk::testing::kCornerA, e);
    EXPECT_EQ(exact.length(), 0.0);
  }
}

TEST(ChordBisect, CapExceededAndOutsideStart) {
  const Membership everything = [](const Vector&) { return true; };
  EXPECT_THROW(chord_bisect(everything, Vector::Zero(2), unit({1, 0}), 1.0, 8.0), BracketError);
  const Membership nothing = [](const Vector&) { return false; };
  EXPECT_THROW(chord_bisect(nothing, Vector::Zero(2), unit({1, 0}), 1.0, 8.0), OutsideBodyError);
}

TEST(Chord, RejectsBadInput) {
  const auto box = make_box(2);
  EXPECT_THROW(box->chord(Vector::Zero(2), Vector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(box->chord(Vector::Zero(3), unit({1, 0, 0})), DimensionError);
  EXPECT_THROW(box->chord(Vector::Constant(2, 0.9), unit({1, 0})), OutsideBodyError);
  EXPECT_THROW(box->contains(Vector::Zero(3)), DimensionError);
  const auto ball = make_ball(2);
  EXPECT_THROW(ball->chord(Vector::Constant(2, 0.9), unit({1, 0})), OutsideBodyError);
  const auto density = make_density(2);
  EXPECT_THROW(density->chord(Vector::Constant(3, 0.9), unit({1, 0, 0})), OutsideBodyError);
}

TEST(LiftDensity, ConstantDensityOnIntervalIsASquare) {
  auto inner = make_box(1);
  const auto lifted = lift_density(inner, [](const Vector&) { return 1.0; }, 1.0, "square", true);
  ASSERT_EQ(lifted->dim(), 2);
  Vector corner(2);
  corner << 0.0, 0.5;
  EXPECT_TRUE(lifted->contains(corner));
  corner << 0.5, 1.0;
  EXPECT_TRUE(lifted->contains(corner));
  corner << 0.5, 1.0 + 1e-9;
  EXPECT_FALSE(lifted->contains(corner));
  corner << 0.0, 0.0;
  EXPECT_FALSE(lifted->contains(corner));

  ChainConfig config;
  config.steps = 100000;
  config.seed = 22;
  const Matrix chain = run_chain(*lifted, config);
  std::vector<double> x;
  for (Eigen::Index j = 0; j < chain.cols(); ++j) x.push_back(chain(0, j));
  EXPECT_LE(ks_distance(x, [](double t) { return std::clamp(t + 0.5, 0.0, 1.0); }), 0.01);
}

TEST(LiftDensity, PeakPointIsMember) {
  auto inner = make_ball(2);
  const auto gauss = named_density("gauss", *inner);
  const auto lifted = lift_density(inner, gauss.f, gauss.f_max);
  Vector p(3);
  p << 0.0, 0.0, gauss.f_max / 2.0;
  EXPECT_TRUE(lifted->contains(p));
}

TEST(LiftDensity, TriangularDensityProjection) {
  auto inner = make_ball(1);  // [-1, 1], R = 1, so tent is 1 - |x|
  const auto tent = named_density("tent", *inner);
  const auto lifted = lift_density(inner, tent.f, tent.f_max, "tent", tent.concave);
  ChainConfig config;
  config.steps = 1000000;
  config.burn_in = 1000;
  config.seed = 23;
  std::vector<double> x;
  x.reserve(config.steps);
  run_chain(*lifted, config, [&](std::size_t, const Vector& p) { x.push_back(p[0]); });
  const auto cdf = [](double t) {
    if (t <= -1.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t < 0.0 ? 0.5 * (1.0 + t) * (1.0 + t) : 1.0 - 0.5 * (1.0 - t) * (1.0 - t);
  };
  EXPECT_LE(ks_distance(x, cdf), 0.01);
}

// exp(-2|x|^2) is convex for |x| > 1/2, so the secant through two points
// of that tail runs above the graph between them and below it just outside.
TEST(LiftDensity, GaussianLiftHasGappedChords) {
  const auto lifted = make_body("lifted:f=gauss/ball:d=2");
  EXPECT_FALSE(lifted->metadata().convex);
  EXPECT_TRUE(make_body("lifted:f=tent/ball:d=2")->metadata().convex);
  EXPECT_TRUE(make_body("lifted:f=uniform/box:d=1")->metadata().convex);

  const auto f = [](double s) { return std::exp(-2.0 * s * s); };
  const double slope = (f(0.95) - f(0.6)) / 0.35;
  const auto on_secant = [&](double s) {
    Vector p(3);
    p << s, 0.0, f(0.6) + slope * (s - 0.6);
    return p;
  };
  EXPECT_TRUE(lifted->contains(on_secant(0.3)));
  EXPECT_FALSE(lifted->contains(on_secant(0.8)));
  EXPECT_TRUE(lifted->contains(on_secant(0.98)));

  ChainConfig config;
  config.algorithm = Algorithm::random_direction;
  EXPECT_THROW(run_chain(*lifted, config), std::invalid_argument);
  EXPECT_THROW(body_bound(*lifted, Algorithm::random_direction), std::invalid_argument);
  config.algorithm = Algorithm::fixed_basis;
  EXPECT_NO_THROW(run_chain(*lifted, config));
}

TEST(LiftDensity, RejectsNonPositiveDensityAtCentre) {
  auto inner = make_ball(2);
  EXPECT_THROW(lift_density(inner, [](const Vector&) { return 0.0; }, 1.0),
               BodyConstructionError);
  EXPECT_THROW(lift_density(inner, [](const Vector&) { return 2.0; }, 1.0),
               BodyConstructionError);
}

//---------------------------------------------------------------------------//
// Properties over the whole catalogue
//---------------------------------------------------------------------------//
class CatalogueProperty : public ::testing::TestWithParam<std::string> {};

// Any direction on convex bodies; axis moves only on a non-convex lift.
Vector probe_direction(const Body& body, RandomSource& rng) {
  if (body.metadata().convex) return sample_direction(body.dim(), rng);
  const Matrix& basis = *body.metadata().basis;
  return basis.col(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(basis.cols()))));
}

TEST_P(CatalogueProperty, ChordConsistency) {
  const auto body = make_body(GetParam());
  const Matrix points = member_points(*body, 300, 31);
  RandomSource rng(32);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const Vector x = points.col(j);
    const Vector e = probe_direction(*body, rng);
    const Chord c = body->chord(x, e);
    ASSERT_LE(c.t_min, 0.0);
    ASSERT_GE(c.t_max, 0.0);
    for (double t : {0.0, c.t_min + kTol, c.t_max - kTol, 0.5 * (c.t_min + c.t_max)}) {
      if (c.degenerate() && t != 0.0) continue;
      EXPECT_TRUE(body->contains(x + t * e)) << "t=" << t;
    }
    if (!c.degenerate()) {
      EXPECT_FALSE(body->contains(x + (c.t_min - 10 * kTol) * e));
      EXPECT_FALSE(body->contains(x + (c.t_max + 10 * kTol) * e));
    }
  }
}

TEST_P(CatalogueProperty, ChordsHaveNoGaps) {
  const auto body = make_body(GetParam());
  const Matrix points = member_points(*body, 1000, 33);
  RandomSource rng(34);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const Vector x = points.col(j);
    const Vector e = probe_direction(*body, rng);
    const Chord c = body->chord(x, e);
    for (int s = 0; s < 100; ++s) {
      const double t = c.t_min + (s + 0.5) / 100.0 * c.length();
      ASSERT_TRUE(body->contains(x + t * e)) << "sample " << j << " t=" << t;
    }
  }
}

TEST_P(CatalogueProperty, MetadataSandwich) {
  const auto body = make_body(GetParam());
  const auto& m = body->metadata();
  const int d = body->dim();
  ASSERT_GT(m.r, 0.0);
  ASSERT_LE(m.r, m.R);
  ASSERT_EQ(m.x_star.size(), d);
  RandomSource rng(35);
  const double outer = m.R * (1.0 + 1e-12) + 1e-12;
  for (int probe = 0; probe < 10000; ++probe) {
    const Vector e = sample_direction(d, rng);
    // Inner probes: uniform in the open inscribed ball, plus its near-surface shell.
    const double rho = (probe % 2 == 0) ? m.r * std::pow(rng.uniform(), 1.0 / d)
                                        : m.r * (1.0 - 1e-9);
    EXPECT_TRUE(body->contains(m.x_star + rho * e)) << "inner probe " << probe;
    // Outer probes: a box around the outscribed ball, and chord endpoints.
    Vector y(d);
    for (int i = 0; i < d; ++i) y[i] = m.x_star[i] + 1.2 * m.R * (2.0 * rng.uniform() - 1.0);
    if (body->contains(y)) EXPECT_LE((y - m.x_star).norm(), outer);
    if (probe % 10 == 0) {
      const Chord c = body->chord(m.x_star, e);
      EXPECT_LE(std::max(-c.t_min, c.t_max), outer);
      EXPECT_GE(std::min(-c.t_min, c.t_max), m.r - 1e-9);
    }
  }
  const Matrix points = member_points(*body, 2000, 36);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    EXPECT_LE((points.col(j) - m.x_star).norm(), outer);
  }
}

TEST_P(CatalogueProperty, BasisSpansSpaceWithUnitMoves) {
  const auto body = make_body(GetParam());
  const auto& m = body->metadata();
  if (!m.basis) GTEST_SKIP() << "no accessibility basis";
  const Matrix& B = *m.basis;
  ASSERT_EQ(B.rows(), body->dim());
  for (Eigen::Index j = 0; j < B.cols(); ++j) EXPECT_NEAR(B.col(j).norm(), 1.0, 1e-14);
  Eigen::FullPivLU<Matrix> lu(B);
  EXPECT_EQ(lu.rank(), body->dim());
}

TEST_P(CatalogueProperty, ClosedFormChordsMatchBisection) {
  const auto body = make_body(GetParam());
  if (!closed_form_chords(*body)) GTEST_SKIP() << "chords are bisected already";
  const auto& m = body->metadata();
  const Membership inside = [&](const Vector& x) { return body->contains(x); };
  const Matrix points = member_points(*body, 300, 37);
  RandomSource rng(38);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const Vector x = points.col(j);
    const Vector e = probe_direction(*body, rng);
    const Chord exact = body->chord(x, e);
    const Chord bisected = chord_bisect(inside, x, e, m.r, 2.0 * m.R + 1.0, kTol);
    EXPECT_NEAR(exact.t_min, bisected.t_min, 10 * kTol);
    EXPECT_NEAR(exact.t_max, bisected.t_max, 10 * kTol);
  }
}

INSTANTIATE_TEST_SUITE_P(Bodies, CatalogueProperty, ::testing::ValuesIn(catalogue()),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (char& ch : name) {
                             if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
                           }
                           return name;
                         });

TEST(Triangle, ClosedFormMatchesBisection) {
  for (bool adapted : {false, true}) {
    const auto triangle = chordwalk::testing::make_triangle(adapted);
    const Membership inside = [&](const Vector& x) { return triangle->contains(x); };
    const Matrix points = member_points(*triangle, 500, 39);
    RandomSource rng(40);
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      const Vector e = sample_direction(2, rng);
      const Chord exact = triangle->chord(points.col(j), e);
      const Chord bisected = chord_bisect(inside, points.col(j), e, 0.5, 4.0, kTol);
      EXPECT_NEAR(exact.t_min, bisected.t_min, 10 * kTol);
      EXPECT_NEAR(exact.t_max, bisected.t_max, 10 * kTol);
    }
  }
}
