#pragma once

#include "chordwalk/geometry.hpp"
#include "chordwalk/quantum.hpp"

namespace chordwalk {

// Catalogue of bodies. Every chart below is isometric to its ambient
// (Euclidean or Hilbert-Schmidt) metric, so r and R are chart distances.

/// Unit ball in R^d centred at the origin; axis basis, k = d.
BodyPtr make_ball(int d);

/// Unit cube [-1/2, 1/2]^d; axis basis, k = d.
BodyPtr make_box(int d);

/// Probability simplex of N outcomes (d = N - 1), charted by an orthonormal
/// basis of the sum-zero hyperplane centred at the barycentre. Move basis
/// is (e_i - e_N) / sqrt(2), i < N, expressed in the chart.
BodyPtr make_simplex(int N);

/// Column-stochastic N x N matrices: a product of N simplices, d = N(N-1).
BodyPtr make_stochastic(int N);

/// Bistochastic N x N matrices, d = (N-1)^2, charted by the orthonormal
/// tensor basis h_a h_b^T of doubly-centred matrices. Move basis is the
/// N^2 (N-1)^2 signed patterns C_{i alpha beta gamma} (i != gamma,
/// alpha != beta), normalized.
BodyPtr make_birkhoff(int N);

/// Density matrices of size N in Bloch coordinates, d = N^2 - 1.
BodyPtr make_density(int N);

/// States of a K x K bipartite system with positive partial transpose.
/// No accessibility basis is known, so fixed-basis sampling is refused.
BodyPtr make_ppt(int K);

/// Orthonormal basis (columns) of the sum-zero subspace of R^N (Helmert).
Matrix helmert_basis(int N);

/// Ambient probability vector of a simplex chart point.
Vector simplex_ambient(int N, const Vector& x);
/// Chart coordinates of an ambient probability vector.
Vector simplex_chart(int N, const Vector& p);

/// N x N bistochastic matrix of a Birkhoff chart point.
Matrix birkhoff_matrix(int N, const Vector& x);
/// Chart coordinates of an N x N matrix with unit row and column sums.
Vector birkhoff_chart(int N, const Matrix& B);

/// N x N column-stochastic matrix of a stochastic-body chart point.
Matrix stochastic_matrix(int N, const Vector& x);

/// Density matrix of a point of a density or ppt body.
CMatrix body_density_matrix(const Body& body, const Vector& x);

}  // namespace chordwalk
