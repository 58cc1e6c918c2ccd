#include "chordwalk/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace chordwalk {

GeneratorBasis su_generators(int N) {
  if (N < 2) {
    throw std::invalid_argument("su_generators: N must be >= 2, got " +
                                std::to_string(N));
  }
  GeneratorBasis basis;
  basis.n = N;
  basis.generators.reserve(static_cast<std::size_t>(N * N - 1));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex I(0.0, 1.0);

  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      CMatrix g = CMatrix::Zero(N, N);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < N; ++j) {
    for (int k = j + 1; k < N; ++k) {
      CMatrix g = CMatrix::Zero(N, N);
      g(j, k) = -I * inv_sqrt2;
      g(k, j) = I * inv_sqrt2;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < N; ++l) {
    CMatrix g = CMatrix::Zero(N, N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (int m = 0; m < l; ++m) g(m, m) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    basis.generators.push_back(std::move(g));
  }
  return basis;
}

CMatrix bloch_to_density(const Vector& tau, const GeneratorBasis& basis) {
  if (tau.size() != basis.dim()) {
    throw DimensionError("bloch_to_density: expected " +
                         std::to_string(basis.dim()) + " coordinates, got " +
                         std::to_string(tau.size()));
  }
  const int N = basis.n;
  CMatrix rho = CMatrix::Identity(N, N) / static_cast<double>(N);
  for (int i = 0; i < basis.dim(); ++i) {
    if (tau[i] != 0.0) rho += tau[i] * basis.generators[i];
  }
  return rho;
}

bool is_hermitian(const CMatrix& H, double tol) {
  if (H.rows() != H.cols()) return false;
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  return (H - H.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Vector density_to_bloch(const CMatrix& rho, const GeneratorBasis& basis) {
  if (rho.rows() != basis.n || rho.cols() != basis.n) {
    throw DimensionError("density_to_bloch: matrix size does not match basis");
  }
  if (!is_hermitian(rho)) {
    throw NotHermitianError("density_to_bloch: input is not Hermitian");
  }
  Vector tau(basis.dim());
  for (int i = 0; i < basis.dim(); ++i) {
    // Tr(lambda rho) = sum_jk lambda_jk rho_kj
    const Complex value = (basis.generators[i].transpose().cwiseProduct(rho)).sum();
    tau[i] = value.real();
  }
  return tau;
}

SpectrumBounds spectrum_bounds(const CMatrix& H) {
  const auto n = H.rows();
  if (n == 1) {
    const double v = H(0, 0).real();
    return {v, std::abs(v)};
  }
  if (n == 2) {
    const double a = H(0, 0).real();
    const double c = H(1, 1).real();
    const double half_gap = std::hypot(0.5 * (a - c), std::abs(H(0, 1)));
    const double mid = 0.5 * (a + c);
    const double lo = mid - half_gap;
    const double hi = mid + half_gap;
    return {lo, std::max(std::abs(lo), std::abs(hi))};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double lo = ev[0];
  const double hi = ev[ev.size() - 1];
  return {lo, std::max(std::abs(lo), std::abs(hi))};
}

double min_eigenvalue(const CMatrix& H) {
  if (!is_hermitian(H)) {
    throw NotHermitianError("min_eigenvalue: input is not Hermitian");
  }
  return spectrum_bounds(H).min;
}

bool is_positive(const CMatrix& H, double tol_rel) {
  const auto s = spectrum_bounds(H);
  return s.min >= -tol_rel * s.norm;
}

CMatrix partial_transpose(const CMatrix& rho, int K) {
  if (K < 1 || rho.rows() != static_cast<Eigen::Index>(K) * K ||
      rho.cols() != rho.rows()) {
    throw DimensionError("partial_transpose: matrix size is not K^2 for K = " +
                         std::to_string(K));
  }
  CMatrix out(rho.rows(), rho.cols());
  for (int a = 0; a < K; ++a) {
    for (int b = 0; b < K; ++b) {
      for (int c = 0; c < K; ++c) {
        for (int d = 0; d < K; ++d) {
          out(a * K + b, c * K + d) = rho(a * K + d, c * K + b);
        }
      }
    }
  }
  return out;
}

bool is_ppt(const CMatrix& rho, int K, double tol) {
  return min_eigenvalue(partial_transpose(rho, K)) >= -tol;
}

}  // namespace chordwalk
