#pragma once

#include <vector>

#include "chordwalk/types.hpp"

namespace chordwalk {

/// Orthonormal traceless Hermitian basis of su(N): Tr(l_i l_j) = delta_ij.
///
/// Ordering is fixed so Bloch coordinates are reproducible:
///   1. symmetric pairs (E_jk + E_kj)/sqrt(2), j < k lexicographic;
///   2. antisymmetric pairs (-i E_jk + i E_kj)/sqrt(2), same order;
///   3. diagonal (sum_{m<=l} E_mm - l E_{l+1,l+1}) / sqrt(l(l+1)).
/// For N = 2 this is (sigma_x, sigma_y, sigma_z)/sqrt(2).
struct GeneratorBasis {
  int n = 0;
  std::vector<CMatrix> generators;

  int dim() const { return static_cast<int>(generators.size()); }
};

GeneratorBasis su_generators(int N);

/// rho = I/N + sum_i tau_i lambda_i. Hermitian with unit trace; positivity
/// is not checked.
CMatrix bloch_to_density(const Vector& tau, const GeneratorBasis& basis);

/// tau_i = Tr(lambda_i rho). Throws NotHermitianError.
Vector density_to_bloch(const CMatrix& rho, const GeneratorBasis& basis);

bool is_hermitian(const CMatrix& H, double tol = 1e-12);

/// Smallest eigenvalue of a Hermitian matrix. Throws NotHermitianError.
double min_eigenvalue(const CMatrix& H);

/// Smallest eigenvalue and spectral norm, without the Hermitian check.
struct SpectrumBounds {
  double min = 0.0;
  double norm = 0.0;
};
SpectrumBounds spectrum_bounds(const CMatrix& H);

/// Transpose on the second factor of a K x K system:
/// entry((a,b),(c,d)) -> entry((a,d),(c,b)), index (a,b) = a*K + b.
CMatrix partial_transpose(const CMatrix& rho, int K);

bool is_ppt(const CMatrix& rho, int K, double tol);

/// min eigenvalue >= -tol_rel * spectral norm.
bool is_positive(const CMatrix& H, double tol_rel = tolerance::kEigen);

}  // namespace chordwalk
