#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chordwalk/types.hpp"

namespace chordwalk {

// Sample matrices are d x n: one point per column.

struct MomentReport {
  std::size_t n = 0;
  Vector mean;
  /// Unbiased (n - 1) covariance.
  Matrix covariance;
  Vector mean_stderr;
  /// Large-sample standard error of each covariance entry.
  Matrix covariance_stderr;
};

MomentReport moments(const Matrix& samples);

/// Combines reports of disjoint sample sets. Means and covariances merge
/// exactly (pairwise update); covariance standard errors are pooled, which
/// assumes both parts come from the same law. Associative and order-free up
/// to rounding.
MomentReport merge(const MomentReport& a, const MomentReport& b);

/// Per-axis histogram over a box; samples outside land in the edge bins.
/// lo[k], hi[k] and bins[k] belong to axes[k].
struct Binning {
  std::vector<int> axes;
  Vector lo;
  Vector hi;
  std::vector<int> bins;
};

/// Keeps the first 3 axes; per-axis bins = floor((n/50)^(1/axes)) clamped to
/// [1, 20], so occupied bins expect at least ~50 counts.
Binning default_binning(std::vector<int> axes, const Vector& lo, const Vector& hi,
                        std::size_t n);

/// (1/2) sum_bins |p_a - p_b|, in [0, 1].
double histogram_tv(const Matrix& a, const Matrix& b, const Binning& binning);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);
/// One-sample distance to a continuous CDF.
double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf);

struct BatchMeans {
  std::size_t batch_count = 0;
  std::size_t batch_length = 0;
  double grand_mean = 0.0;
  /// Sample variance of the batch means.
  double batch_variance = 0.0;
  /// Anderson-Darling A*^2 of the standardized batch means against N(0,1),
  /// with the small-sample correction for estimated mean and variance.
  /// NaN when the batch means are all equal.
  double anderson_darling = 0.0;
};

/// Splits the series into batch_count equal batches (the tail remainder is
/// dropped).
BatchMeans clt_batch_means(std::span<const double> series, std::size_t batch_count);

/// max over n >= 100 of |S_n| / sqrt(2 n log log n). Feed a centred
/// observable scaled to unit asymptotic variance; the limsup is then 1.
double lil_envelope(std::span<const double> series);

/// Biased autocorrelation estimates for lags 0..max_lag; lag 0 is 1.
std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag);

/// 1 + 2 sum rho_k with Sokal's self-consistent window (c = 5).
double integrated_autocorrelation_time(std::span<const double> series,
                                       std::size_t max_lag = 200);

/// Standard error of the series mean from non-overlapping batch means.
double batch_means_stderr(std::span<const double> series, std::size_t batch_count = 50);

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//
struct Check {
  std::string name;
  double value = 0.0;
  /// Reference value the statistic is compared with.
  double target = 0.0;
  /// Allowed |value - target|; unused for one-sided checks.
  double band = 0.0;
  /// When set, `target` is an upper limit and the check is value <= target.
  bool one_sided = false;
  bool pass = false;
};

/// Builds a check that passes when |value - target| <= band.
Check within_band(std::string name, double value, double target, double band);
/// Passes when value <= limit.
Check at_most(std::string name, double value, double limit);

struct Report {
  std::vector<Check> checks;

  bool pass() const;
  /// One line per check: "PASS name value=... target=... band=..." or, for
  /// one-sided checks, "PASS name value=... limit=...".
  std::string to_text() const;
  /// {"pass": bool, "checks": [{name, value, target, band | limit, pass}, ...]}
  std::string to_json() const;
};

}  // namespace chordwalk
