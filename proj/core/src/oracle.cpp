#include "chordwalk/oracle.hpp"

#include <cmath>

#include "chordwalk/bodies.hpp"
#include "chordwalk/quantum.hpp"

namespace chordwalk {

Vector exact_ball(int d, double r, RandomSource& rng) {
  if (d < 1) throw std::invalid_argument("exact_ball: d must be >= 1");
  Vector g(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) g[i] = rng.normal();
    norm2 = g.squaredNorm();
  } while (!(norm2 > 0.0));
  const double radius = r * std::pow(rng.uniform(), 1.0 / d);
  return g * (radius / std::sqrt(norm2));
}

Vector exact_box(int d, RandomSource& rng) {
  Vector x(d);
  for (int i = 0; i < d; ++i) x[i] = rng.uniform() - 0.5;
  return x;
}

Vector exact_simplex(int N, RandomSource& rng) {
  if (N < 2) throw std::invalid_argument("exact_simplex: N must be >= 2");
  Vector p(N);
  for (int i = 0; i < N; ++i) p[i] = -std::log1p(-rng.uniform());
  p /= p.sum();
  // Absorb the rounding residue so the sum is 1 up to one ulp.
  p[N - 1] = 1.0 - p.head(N - 1).sum();
  return p;
}

CMatrix hilbert_schmidt_state(int N, RandomSource& rng) {
  CMatrix G(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) G(i, j) = Complex(rng.normal(), rng.normal());
  }
  CMatrix rho = G * G.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

RejectionResult rejection(const Proposal& proposal, const Membership& accept,
                          std::uint64_t max_tries, RandomSource& rng) {
  for (std::uint64_t t = 1; t <= max_tries; ++t) {
    Vector x = proposal(rng);
    if (accept(x)) return {std::move(x), t};
  }
  throw RejectionExhausted("rejection: no acceptance in " + std::to_string(max_tries) +
                           " proposals");
}

double AcceptanceRate::rate() const {
  return proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0;
}

double AcceptanceRate::standard_error() const {
  if (!proposed) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(proposed));
}

OracleSampler::OracleSampler(std::string description, Proposal proposal,
                             Membership accept, std::uint64_t max_tries)
    : description_(std::move(description)),
      proposal_(std::move(proposal)),
      accept_(std::move(accept)),
      max_tries_(max_tries) {}

Vector OracleSampler::draw(RandomSource& rng) {
  if (!accept_) {
    ++stats_.accepted;
    ++stats_.proposed;
    return proposal_(rng);
  }
  try {
    auto result = rejection(proposal_, accept_, max_tries_, rng);
    ++stats_.accepted;
    stats_.proposed += result.tries;
    return std::move(result.value);
  } catch (const RejectionExhausted&) {
    stats_.proposed += max_tries_;
    throw;
  }
}

Matrix OracleSampler::draw_many(std::size_t n, RandomSource& rng) {
  Matrix out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector x = draw(rng);
    if (i == 0) out.resize(x.size(), static_cast<Eigen::Index>(n));
    out.col(static_cast<Eigen::Index>(i)) = x;
  }
  return out;
}

std::optional<OracleSampler> oracle_for(const Body& body) {
  const int p = body.param();
  const int d = body.dim();
  switch (body.kind()) {
    case BodyKind::ball:
      return OracleSampler("exact: Gaussian direction, radius U^(1/d)",
                           [d](RandomSource& rng) { return exact_ball(d, 1.0, rng); });
    case BodyKind::box:
      return OracleSampler("exact: independent uniform coordinates",
                           [d](RandomSource& rng) { return exact_box(d, rng); });
    case BodyKind::simplex:
      return OracleSampler("exact: normalized exponentials (Dirichlet)",
                           [p](RandomSource& rng) {
                             return simplex_chart(p, exact_simplex(p, rng));
                           });
    case BodyKind::stochastic:
      return OracleSampler("exact: one Dirichlet draw per column",
                           [p](RandomSource& rng) {
                             Vector x(p * (p - 1));
                             for (int j = 0; j < p; ++j) {
                               x.segment(j * (p - 1), p - 1) =
                                   simplex_chart(p, exact_simplex(p, rng));
                             }
                             return x;
                           });
    case BodyKind::birkhoff: {
      if (p > 4) return std::nullopt;
      const Body* target = &body;
      return OracleSampler(
          "rejection: uniform free (N-1)x(N-1) block, accept non-negative completion",
          [p](RandomSource& rng) {
            Matrix B(p, p);
            for (int i = 0; i + 1 < p; ++i) {
              for (int j = 0; j + 1 < p; ++j) B(i, j) = rng.uniform();
            }
            for (int i = 0; i + 1 < p; ++i) B(i, p - 1) = 1.0 - B.row(i).head(p - 1).sum();
            for (int j = 0; j < p; ++j) B(p - 1, j) = 1.0 - B.col(j).head(p - 1).sum();
            return birkhoff_chart(p, B);
          },
          [target](const Vector& x) { return target->contains(x); });
    }
    case BodyKind::density: {
      if (p > 3) return std::nullopt;
      const double R = body.metadata().R;
      const Body* target = &body;
      return OracleSampler(
          "rejection: uniform Bloch ball of radius R, accept positive states",
          [d, R](RandomSource& rng) { return exact_ball(d, R, rng); },
          [target](const Vector& x) { return target->contains(x); });
    }
    case BodyKind::ppt: {
      if (p != 2) return std::nullopt;
      const int N = p * p;
      auto basis = std::make_shared<GeneratorBasis>(su_generators(N));
      const Body* target = &body;
      return OracleSampler(
          "rejection: Hilbert-Schmidt states, accept positive partial transpose",
          [N, basis](RandomSource& rng) {
            return density_to_bloch(hilbert_schmidt_state(N, rng), *basis);
          },
          [target](const Vector& x) { return target->contains(x); });
    }
    case BodyKind::lifted:
    case BodyKind::polytope:
      break;
  }
  return std::nullopt;
}

}  // namespace chordwalk
