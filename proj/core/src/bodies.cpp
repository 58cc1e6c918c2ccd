#include "chordwalk/bodies.hpp"

#include <cmath>
#include <string>

namespace chordwalk {
namespace {

std::string labelled(const char* kind, const char* key, int value) {
  return std::string(kind) + ":" + key + "=" + std::to_string(value);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw BodyConstructionError(message);
}

//---------------------------------------------------------------------------//
class BallBody final : public Body {
 public:
  BallBody(int d, BodyMetadata meta)
      : Body(BodyKind::ball, d, labelled("ball", "d", d), std::move(meta)) {}

 protected:
  bool member(const Vector& x) const override {
    return x.squaredNorm() <= 1.0 + 2.0 * tolerance::kLinear;
  }

  Chord line_chord(const Vector& x, const Vector& e) const override {
    // |x + t e|^2 = 1  <=>  a t^2 + 2 b t + c = 0
    const double a = e.squaredNorm();
    const double b = x.dot(e);
    const double c = x.squaredNorm() - 1.0;
    if (c > 2.0 * tolerance::kLinear) {
      throw OutsideBodyError(label() + ": chord origin outside the ball");
    }
    const double disc = std::max(b * b - a * std::min(c, 0.0), 0.0);
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    // Roots q / a and c / q; pick the non-positive and non-negative ones.
    double t1 = q / a;
    double t2 = (q != 0.0) ? std::min(c, 0.0) / q : -t1;
    if (t1 > t2) std::swap(t1, t2);
    return {std::min(t1, 0.0), std::max(t2, 0.0)};
  }
};

//---------------------------------------------------------------------------//
class SpectralBody final : public Body {
 public:
  SpectralBody(BodyKind kind, int param, std::string label, BodyMetadata meta,
               GeneratorBasis basis, int K)
      : Body(kind, param, std::move(label), std::move(meta)),
        basis_(std::move(basis)),
        K_(K) {}

  const GeneratorBasis& generators() const { return basis_; }

  std::optional<Vector> ambient(const Vector& x) const override {
    check_dim(x, "point");
    const CMatrix rho = bloch_to_density(x, basis_);
    const auto n = rho.rows();
    Vector out(2 * n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out[2 * (i * n + j)] = rho(i, j).real();
        out[2 * (i * n + j) + 1] = rho(i, j).imag();
      }
    }
    return out;
  }

 protected:
  bool member(const Vector& x) const override {
    const CMatrix rho = bloch_to_density(x, basis_);
    if (!is_positive(rho)) return false;
    return K_ == 0 || is_positive(partial_transpose(rho, K_));
  }

  Chord line_chord(const Vector& x, const Vector& e) const override {
    const CMatrix rho = bloch_to_density(x, basis_);
    CMatrix step = CMatrix::Zero(basis_.n, basis_.n);
    for (int i = 0; i < basis_.dim(); ++i) {
      if (e[i] != 0.0) step += e[i] * basis_.generators[i];
    }
    CMatrix rho_pt;
    CMatrix step_pt;
    if (K_ > 0) {
      rho_pt = partial_transpose(rho, K_);
      step_pt = partial_transpose(step, K_);
    }
    CMatrix probe(basis_.n, basis_.n);
    auto inside = [&](double t) {
      probe = rho + t * step;
      if (!is_positive(probe)) return false;
      if (K_ == 0) return true;
      probe = rho_pt + t * step_pt;
      return is_positive(probe);
    };
    if (!inside(0.0)) {
      throw OutsideBodyError(label() + ": chord origin is not a valid state");
    }
    const auto& m = metadata();
    return chord_bisect_line(inside, m.r, 2.0 * m.R);
  }

 private:
  GeneratorBasis basis_;
  int K_;
};

}  // namespace

//---------------------------------------------------------------------------//
Matrix helmert_basis(int N) {
  Matrix H = Matrix::Zero(N, N - 1);
  for (int j = 1; j < N; ++j) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(j * (j + 1)));
    for (int i = 0; i < j; ++i) H(i, j - 1) = scale;
    H(j, j - 1) = -static_cast<double>(j) * scale;
  }
  return H;
}

BodyPtr make_ball(int d) {
  require(d >= 1, "ball: dimension must be >= 1");
  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  meta.r = 1.0;
  meta.R = 1.0;
  meta.k = d;
  meta.basis = Matrix::Identity(d, d);
  return std::make_shared<BallBody>(d, std::move(meta));
}

BodyPtr make_box(int d) {
  require(d >= 1, "box: dimension must be >= 1");
  Matrix A(2 * d, d);
  A << Matrix::Identity(d, d), -Matrix::Identity(d, d);
  Vector b = Vector::Constant(2 * d, 0.5);
  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  meta.r = 0.5;
  meta.R = 0.5 * std::sqrt(static_cast<double>(d));
  meta.k = d;
  meta.basis = Matrix::Identity(d, d);
  return make_polytope(labelled("box", "d", d), std::move(A), std::move(b),
                       std::move(meta), std::nullopt, BodyKind::box, d);
}

//---------------------------------------------------------------------------//
Vector simplex_ambient(int N, const Vector& x) {
  return Vector::Constant(N, 1.0 / N) + helmert_basis(N) * x;
}

Vector simplex_chart(int N, const Vector& p) {
  return helmert_basis(N).transpose() * (p - Vector::Constant(N, 1.0 / N));
}

BodyPtr make_simplex(int N) {
  require(N >= 2, "simplex: N must be >= 2");
  const int d = N - 1;
  const Matrix H = helmert_basis(N);

  // p = 1/N + H x >= 0
  Matrix A = -H;
  Vector b = Vector::Constant(N, 1.0 / N);

  Matrix moves(d, d);
  for (int i = 0; i < d; ++i) {
    Vector edge = Vector::Zero(N);
    edge[i] = 1.0;
    edge[N - 1] = -1.0;
    moves.col(i) = H.transpose() * edge / std::sqrt(2.0);
  }

  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  meta.r = 1.0 / std::sqrt(static_cast<double>(N) * (N - 1));
  meta.R = std::sqrt(static_cast<double>(N - 1) / N);
  meta.k = d;
  meta.basis = std::move(moves);

  AffineChart chart{Vector::Constant(N, 1.0 / N), H};
  return make_polytope(labelled("simplex", "n", N), std::move(A), std::move(b),
                       std::move(meta), std::move(chart), BodyKind::simplex, N);
}

//---------------------------------------------------------------------------//
Matrix stochastic_matrix(int N, const Vector& x) {
  const Matrix H = helmert_basis(N);
  Matrix T(N, N);
  for (int j = 0; j < N; ++j) {
    T.col(j) = Vector::Constant(N, 1.0 / N) + H * x.segment(j * (N - 1), N - 1);
  }
  return T;
}

BodyPtr make_stochastic(int N) {
  require(N >= 2, "stochastic: N must be >= 2");
  const int m = N - 1;
  const int d = N * m;
  const Matrix H = helmert_basis(N);

  // Ambient entry T(i, j), row-major index i*N + j, depends on column block j.
  Matrix frame = Matrix::Zero(N * N, d);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      frame.block(i * N + j, j * m, 1, m) = H.row(i);
    }
  }
  Matrix A = -frame;
  Vector b = Vector::Constant(N * N, 1.0 / N);

  Matrix simplex_moves(m, m);
  for (int i = 0; i < m; ++i) {
    Vector edge = Vector::Zero(N);
    edge[i] = 1.0;
    edge[N - 1] = -1.0;
    simplex_moves.col(i) = H.transpose() * edge / std::sqrt(2.0);
  }
  Matrix moves = Matrix::Zero(d, d);
  for (int j = 0; j < N; ++j) moves.block(j * m, j * m, m, m) = simplex_moves;

  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  meta.r = 1.0 / std::sqrt(static_cast<double>(N) * m);
  meta.R = std::sqrt(static_cast<double>(m));
  meta.k = d;
  meta.basis = std::move(moves);

  AffineChart chart{Vector::Constant(N * N, 1.0 / N), frame};
  return make_polytope(labelled("stochastic", "n", N), std::move(A),
                       std::move(b), std::move(meta), std::move(chart),
                       BodyKind::stochastic, N);
}

//---------------------------------------------------------------------------//
Matrix birkhoff_matrix(int N, const Vector& x) {
  const int m = N - 1;
  const Matrix H = helmert_basis(N);
  Matrix Y(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) Y(a, b) = x[a * m + b];
  }
  return Matrix::Constant(N, N, 1.0 / N) + H * Y * H.transpose();
}

Vector birkhoff_chart(int N, const Matrix& B) {
  const int m = N - 1;
  const Matrix H = helmert_basis(N);
  const Matrix Y = H.transpose() * (B - Matrix::Constant(N, N, 1.0 / N)) * H;
  Vector x(m * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) x[a * m + b] = Y(a, b);
  }
  return x;
}

BodyPtr make_birkhoff(int N) {
  require(N >= 2, "birkhoff: N must be >= 2");
  const int m = N - 1;
  const int d = m * m;
  const Matrix H = helmert_basis(N);

  // Entry B(i, j) = 1/N + sum_ab H(i,a) H(j,b) x[a*m + b].
  Matrix frame(N * N, d);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) frame(i * N + j, a * m + b) = H(i, a) * H(j, b);
      }
    }
  }
  Matrix A = -frame;
  Vector b = Vector::Constant(N * N, 1.0 / N);

  // C_{i alpha beta gamma}: -1 at (i,alpha), +1 at (i,beta), +1 at
  // (gamma,alpha), -1 at (gamma,beta).
  const long l = static_cast<long>(N) * N * m * m;
  Matrix moves(d, l);
  long col = 0;
  for (int i = 0; i < N; ++i) {
    for (int alpha = 0; alpha < N; ++alpha) {
      for (int beta = 0; beta < N; ++beta) {
        if (beta == alpha) continue;
        for (int gamma = 0; gamma < N; ++gamma) {
          if (gamma == i) continue;
          Matrix C = Matrix::Zero(N, N);
          C(i, alpha) = -1.0;
          C(i, beta) = 1.0;
          C(gamma, alpha) = 1.0;
          C(gamma, beta) = -1.0;
          const Matrix Y = H.transpose() * C * H;
          Vector v(d);
          for (int a = 0; a < m; ++a) {
            for (int bb = 0; bb < m; ++bb) v[a * m + bb] = Y(a, bb);
          }
          moves.col(col++) = v.normalized();
        }
      }
    }
  }

  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  // Nearest facet B_ij = 0 lies at distance 1/(N-1) from the uniform matrix.
  meta.r = 1.0 / m;
  meta.R = std::sqrt(static_cast<double>(m));
  meta.k = static_cast<long>(m) * m * m;
  meta.basis = std::move(moves);

  AffineChart chart{Vector::Constant(N * N, 1.0 / N), frame};
  return make_polytope(labelled("birkhoff", "n", N), std::move(A), std::move(b),
                       std::move(meta), std::move(chart), BodyKind::birkhoff, N);
}

//---------------------------------------------------------------------------//
namespace {

BodyMetadata state_metadata(int N, bool with_basis) {
  const int d = N * N - 1;
  BodyMetadata meta;
  meta.d = d;
  meta.x_star = Vector::Zero(d);
  meta.r = 1.0 / std::sqrt(static_cast<double>(N) * (N - 1));
  meta.R = std::sqrt(static_cast<double>(N - 1) / N);
  if (with_basis) {
    meta.k = d;
    meta.basis = Matrix::Identity(d, d);
  }
  return meta;
}

}  // namespace

BodyPtr make_density(int N) {
  require(N >= 2, "density: N must be >= 2");
  return std::make_shared<SpectralBody>(BodyKind::density, N,
                                        labelled("density", "n", N),
                                        state_metadata(N, true), su_generators(N), 0);
}

BodyPtr make_ppt(int K) {
  require(K >= 2, "ppt: K must be >= 2");
  const int N = K * K;
  return std::make_shared<SpectralBody>(BodyKind::ppt, K, labelled("ppt", "k", K),
                                        state_metadata(N, false), su_generators(N), K);
}

CMatrix body_density_matrix(const Body& body, const Vector& x) {
  int N = 0;
  if (body.kind() == BodyKind::density) {
    N = body.param();
  } else if (body.kind() == BodyKind::ppt) {
    N = body.param() * body.param();
  } else {
    throw std::invalid_argument(body.label() + " is not a quantum state body");
  }
  if (x.size() != N * N - 1) throw DimensionError("body_density_matrix: bad length");
  return bloch_to_density(x, su_generators(N));
}

}  // namespace chordwalk
