#include "chordwalk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

namespace chordwalk {

MomentReport moments(const Matrix& samples) {
  const Eigen::Index d = samples.rows();
  const Eigen::Index n = samples.cols();
  if (n < 2) throw std::invalid_argument("moments: need at least 2 samples");
  MomentReport r;
  r.n = static_cast<std::size_t>(n);
  r.mean = samples.rowwise().mean();
  const Matrix centred = samples.colwise() - r.mean;
  const double nn = static_cast<double>(n);
  r.covariance = centred * centred.transpose() / (nn - 1.0);
  r.mean_stderr = (r.covariance.diagonal() / nn).cwiseSqrt();
  r.covariance_stderr.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const double m4 = (centred.row(i).array() * centred.row(j).array()).square().mean();
      const double c = r.covariance(i, j);
      const double se = std::sqrt(std::max(0.0, m4 - c * c) / nn);
      r.covariance_stderr(i, j) = se;
      r.covariance_stderr(j, i) = se;
    }
  }
  return r;
}

MomentReport merge(const MomentReport& a, const MomentReport& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  if (a.mean.size() != b.mean.size()) throw DimensionError("merge: dimension mismatch");
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double n = na + nb;
  const Vector delta = b.mean - a.mean;
  MomentReport r;
  r.n = a.n + b.n;
  r.mean = a.mean + delta * (nb / n);
  const Matrix m2 = a.covariance * (na - 1.0) + b.covariance * (nb - 1.0) +
                    delta * delta.transpose() * (na * nb / n);
  r.covariance = m2 / (n - 1.0);
  r.mean_stderr = (r.covariance.diagonal() / n).cwiseSqrt();
  // se^2 * n estimates the per-sample variance; pool those.
  const Matrix va = (a.covariance_stderr.array().square() * na).matrix();
  const Matrix vb = (b.covariance_stderr.array().square() * nb).matrix();
  r.covariance_stderr = ((va * na + vb * nb) / (n * n)).cwiseSqrt();
  return r;
}

Binning default_binning(std::vector<int> axes, const Vector& lo, const Vector& hi,
                        std::size_t n) {
  if (axes.empty()) throw std::invalid_argument("default_binning: no axes");
  if (axes.size() > 3) axes.resize(3);
  if (lo.size() < static_cast<Eigen::Index>(axes.size()) || lo.size() != hi.size()) {
    throw std::invalid_argument("default_binning: lo/hi must cover every axis");
  }
  const double per_axis =
      std::floor(std::pow(static_cast<double>(n) / 50.0, 1.0 / static_cast<double>(axes.size())));
  const int bins = static_cast<int>(std::clamp(per_axis, 1.0, 20.0));
  Binning b;
  b.axes = axes;
  b.lo = lo.head(static_cast<Eigen::Index>(axes.size()));
  b.hi = hi.head(static_cast<Eigen::Index>(axes.size()));
  b.bins.assign(axes.size(), bins);
  return b;
}

namespace {

std::vector<double> histogram(const Matrix& s, const Binning& b) {
  std::size_t total = 1;
  for (int k : b.bins) total *= static_cast<std::size_t>(k);
  std::vector<double> counts(total, 0.0);
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    std::size_t index = 0;
    for (std::size_t a = 0; a < b.axes.size(); ++a) {
      const auto i = static_cast<Eigen::Index>(a);
      const double u = (s(b.axes[a], c) - b.lo[i]) / (b.hi[i] - b.lo[i]);
      const int k = std::clamp(static_cast<int>(std::floor(u * b.bins[a])), 0, b.bins[a] - 1);
      index = index * static_cast<std::size_t>(b.bins[a]) + static_cast<std::size_t>(k);
    }
    counts[index] += 1.0;
  }
  for (double& v : counts) v /= static_cast<double>(s.cols());
  return counts;
}

}  // namespace

double histogram_tv(const Matrix& a, const Matrix& b, const Binning& binning) {
  if (a.cols() == 0 || b.cols() == 0) throw std::invalid_argument("histogram_tv: empty sample");
  if (binning.axes.size() != binning.bins.size() ||
      binning.lo.size() != static_cast<Eigen::Index>(binning.axes.size()) ||
      binning.hi.size() != binning.lo.size()) {
    throw std::invalid_argument("histogram_tv: inconsistent binning");
  }
  for (std::size_t k = 0; k < binning.axes.size(); ++k) {
    const int axis = binning.axes[k];
    if (axis < 0 || axis >= a.rows() || axis >= b.rows()) {
      throw DimensionError("histogram_tv: axis out of range");
    }
    if (binning.bins[k] < 1) throw std::invalid_argument("histogram_tv: bins must be >= 1");
    const auto i = static_cast<Eigen::Index>(k);
    if (!(binning.hi[i] > binning.lo[i])) throw std::invalid_argument("histogram_tv: empty range");
  }
  const auto pa = histogram(a, binning);
  const auto pb = histogram(b, binning);
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) sum += std::abs(pa[i] - pb[i]);
  return 0.5 * sum;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    best = std::max({best, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return best;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mean_of(std::span<const double> s) {
  double m = 0.0;
  for (double v : s) m += v;
  return m / static_cast<double>(s.size());
}

}  // namespace

BatchMeans clt_batch_means(std::span<const double> series, std::size_t batch_count) {
  if (batch_count < 2) throw std::invalid_argument("clt_batch_means: need >= 2 batches");
  if (series.size() < 2 * batch_count) {
    throw std::invalid_argument("clt_batch_means: series shorter than 2 * batch_count");
  }
  BatchMeans r;
  r.batch_count = batch_count;
  r.batch_length = series.size() / batch_count;
  std::vector<double> means(batch_count);
  for (std::size_t b = 0; b < batch_count; ++b) {
    means[b] = mean_of(series.subspan(b * r.batch_length, r.batch_length));
  }
  r.grand_mean = mean_of(means);
  double ss = 0.0;
  for (double m : means) ss += (m - r.grand_mean) * (m - r.grand_mean);
  r.batch_variance = ss / static_cast<double>(batch_count - 1);
  if (!(r.batch_variance > 0.0)) {
    r.anderson_darling = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double sd = std::sqrt(r.batch_variance);
  std::vector<double> z(batch_count);
  for (std::size_t b = 0; b < batch_count; ++b) z[b] = (means[b] - r.grand_mean) / sd;
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(batch_count);
  double s = 0.0;
  for (std::size_t i = 0; i < batch_count; ++i) {
    const double lo = std::max(normal_cdf(z[i]), 1e-300);
    const double hi = std::max(1.0 - normal_cdf(z[batch_count - 1 - i]), 1e-300);
    s += (2.0 * static_cast<double>(i) + 1.0) * (std::log(lo) + std::log(hi));
  }
  const double a2 = -n - s / n;
  r.anderson_darling = a2 * (1.0 + 0.75 / n + 2.25 / (n * n));
  return r;
}

double lil_envelope(std::span<const double> series) {
  if (series.size() < 100) throw std::invalid_argument("lil_envelope: need >= 100 terms");
  double sum = 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    sum += series[i];
    const double n = static_cast<double>(i + 1);
    if (i + 1 >= 100) best = std::max(best, std::abs(sum) / std::sqrt(2.0 * n * std::log(std::log(n))));
  }
  return best;
}

std::vector<double> autocorrelation(std::span<const double> series, std::size_t max_lag) {
  if (series.size() <= max_lag) {
    throw std::invalid_argument("autocorrelation: series must be longer than max_lag");
  }
  const double m = mean_of(series);
  const std::size_t n = series.size();
  std::vector<double> c(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double acc = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) acc += (series[t] - m) * (series[t + k] - m);
    c[k] = acc / static_cast<double>(n);
  }
  if (!(c[0] > 0.0)) throw std::invalid_argument("autocorrelation: zero-variance series");
  const double c0 = c[0];
  for (double& v : c) v /= c0;
  return c;
}

double integrated_autocorrelation_time(std::span<const double> series, std::size_t max_lag) {
  max_lag = std::min(max_lag, series.size() - 1);
  const auto rho = autocorrelation(series, max_lag);
  double tau = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    tau += 2.0 * rho[k];
    if (static_cast<double>(k) >= 5.0 * tau) break;
  }
  return std::max(tau, 0.0);
}

double batch_means_stderr(std::span<const double> series, std::size_t batch_count) {
  const auto bm = clt_batch_means(series, batch_count);
  return std::sqrt(bm.batch_variance / static_cast<double>(bm.batch_count));
}

Check within_band(std::string name, double value, double target, double band) {
  return {std::move(name), value, target, band, false, std::abs(value - target) <= band};
}

Check at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, 0.0, true, value <= limit};
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    const char* verdict = c.pass ? "PASS" : "FAIL";
    if (c.one_sided) {
      out += fmt::format("{} {} value={:.6g} limit={:.6g}\n", verdict, c.name, c.value, c.target);
    } else {
      out += fmt::format("{} {} value={:.6g} target={:.6g} band={:.6g}\n", verdict, c.name, c.value,
                         c.target, c.band);
    }
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["pass"] = pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item{{"name", c.name}, {"value", c.value}};
    if (c.one_sided) {
      item["limit"] = c.target;
    } else {
      item["target"] = c.target;
      item["band"] = c.band;
    }
    item["pass"] = c.pass;
    j["checks"].push_back(item);
  }
  return j.dump();
}

}  // namespace chordwalk
