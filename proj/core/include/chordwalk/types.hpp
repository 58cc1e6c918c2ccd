#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace chordwalk {

/// Point or direction in a body's intrinsic coordinates.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

namespace tolerance {
/// Slack on normalized linear constraints (a distance).
inline constexpr double kLinear = 1e-12;
/// Eigenvalue slack, relative to the spectral norm.
inline constexpr double kEigen = 1e-11;
/// Absolute width of bisected chord endpoints.
inline constexpr double kBisect = 1e-10;
inline constexpr int kBisectMaxIterations = 200;
}  // namespace tolerance

//---------------------------------------------------------------------------//
// Errors
//---------------------------------------------------------------------------//
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed body descriptor text.
class DescriptorError : public Error {
 public:
  using Error::Error;
};

/// Well-formed descriptor whose parameters cannot produce a body.
class BodyConstructionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class OutsideBodyError : public Error {
 public:
  using Error::Error;
};

/// Chord bracketing hit the 2R cap while still inside.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Fixed-basis sampling or bounds requested on a body without an
/// accessibility basis / constant.
class AccessibilityError : public Error {
 public:
  using Error::Error;
};

class RejectionExhausted : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

}  // namespace chordwalk
