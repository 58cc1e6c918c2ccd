// One PASS/FAIL line per check. Usage: acceptance [--criterion k]...
// Exits 0 only when every selected check passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "chordwalk/bodies.hpp"
#include "chordwalk/bounds.hpp"
#include "chordwalk/descriptor.hpp"
#include "chordwalk/diagnostics.hpp"
#include "chordwalk/oracle.hpp"
#include "chordwalk/quantum.hpp"
#include "chordwalk/sampler.hpp"
#include "cli/commands.hpp"
#include "fixtures.hpp"

using namespace chordwalk;

namespace {

int failures = 0;

void emit(const Check& c) {
  if (!c.pass) ++failures;
  Report r;
  r.checks.push_back(c);
  std::cout << r.to_text() << std::flush;
}

void emit_fail(const std::string& name, const std::string& reason) {
  ++failures;
  std::cout << "FAIL " << name << ": " << reason << '\n' << std::flush;
}

void emit_bool(const std::string& name, bool ok, const std::string& detail = "") {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : " " + detail) << '\n'
            << std::flush;
}

Check relative(const std::string& name, double value, double expected, double tol) {
  return within_band(name, value / expected, 1.0, tol);
}

std::vector<double> row_copy(const Matrix& m, Eigen::Index i) {
  std::vector<double> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(j)] = m(i, j);
  return v;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// b_d from the Gamma function, independent of the library's recurrence.
double ball_volume(int d) { return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

//---------------------------------------------------------------------------//
// 1. Bound arithmetic
//---------------------------------------------------------------------------//
void criterion1() {
  for (int d : {2, 3, 5}) {
    const double bd = ball_volume(d);
    emit(relative(fmt::format("c1 ball d={} fixed-basis theta / (b_d d^-2d)", d),
                  body_bound(*make_ball(d), Algorithm::fixed_basis).theta,
                  bd * std::pow(d, -2.0 * d), 1e-14));
    emit(relative(fmt::format("c1 cube d={} fixed-basis theta / (b_d d^-3d)", d),
                  body_bound(*make_box(d), Algorithm::fixed_basis).theta,
                  bd * std::pow(d, -3.0 * d), 1e-14));
    emit(relative(fmt::format("c1 simplex d={} fixed-basis theta / (b_d d^-4d)", d),
                  body_bound(*make_simplex(d + 1), Algorithm::fixed_basis).theta,
                  bd * std::pow(d, -4.0 * d), 1e-14));
    // Cube: R/r = sqrt(d), theta = (2/d) [(sqrt(d) + 1)^(d-1) sqrt(d)]^-1.
    const double s = std::sqrt(static_cast<double>(d));
    const double cube_theta = (2.0 / d) / (std::pow(s + 1.0, d - 1) * s);
    const auto cube = body_bound(*make_box(d), Algorithm::random_direction, BoundVariant::as_stated);
    emit(relative(fmt::format("c1 cube d={} random-direction theta", d), cube.theta, cube_theta,
                  1e-14));
    emit(within_band(fmt::format("c1 cube d={} random-direction alpha", d), cube.alpha,
                     1.0 - cube_theta, 1e-15));
  }
  emit(within_band("c1 ball d=2 fixed-basis theta = pi/16",
                   body_bound(*make_ball(2), Algorithm::fixed_basis).theta, M_PI / 16.0, 1e-16));

  // Birkhoff with R/r = N - 1 and d = (N-1)^2.
  for (int N : {2, 3}) {
    const int d = (N - 1) * (N - 1);
    const double expected = 1.0 - (2.0 / d) / (std::pow(N, d - 1) * (N - 1.0));
    const std::string name = fmt::format("c1 birkhoff N={} random-direction alpha", N);
    try {
      const auto b = bound_random_direction(d, 1.0 / (N - 1.0), BoundVariant::as_stated);
      emit(within_band(name, b.alpha, expected, 1e-15));
    } catch (const std::exception& e) {
      emit_fail(name, fmt::format("expected {} but no bound exists: {}", expected, e.what()));
    }
  }
}

//---------------------------------------------------------------------------//
// 2. One step preserves the uniform law
//---------------------------------------------------------------------------//
void criterion2() {
  const std::size_t n = 100000;
  for (const char* text : {"ball:d=3", "box:d=5", "simplex:n=4", "birkhoff:n=3", "density:n=2"}) {
    const auto body = make_body(text);
    auto oracle = oracle_for(*body);
    RandomSource rng(derive_seed(2002, std::hash<std::string>{}(text)));
    const Matrix before = oracle->draw_many(n, rng);
    Matrix after(before.rows(), before.cols());
    for (Eigen::Index j = 0; j < before.cols(); ++j) {
      after.col(j) = step_random_direction(*body, before.col(j), rng);
    }
    for (Eigen::Index i = 0; i < before.rows(); ++i) {
      const auto b = row_copy(before, i);
      const auto a = row_copy(after, i);
      const double centre = mean(b);
      std::vector<double> dm(n), dv(n);
      for (std::size_t j = 0; j < n; ++j) {
        dm[j] = a[j] - b[j];
        dv[j] = (a[j] - centre) * (a[j] - centre) - (b[j] - centre) * (b[j] - centre);
      }
      const double sqn = std::sqrt(static_cast<double>(n));
      emit(within_band(fmt::format("c2 {} mean shift c{}", text, i), mean(dm), 0.0,
                       4.0 * stddev(dm) / sqn));
      emit(within_band(fmt::format("c2 {} variance shift c{}", text, i), mean(dv), 0.0,
                       4.0 * stddev(dv) / sqn));
    }
  }
}

//---------------------------------------------------------------------------//
// Shared: projected TV on disjoint chart pairs
//---------------------------------------------------------------------------//
void projected_tv(const std::string& prefix, const Matrix& chain, const Matrix& reference,
                  double limit, const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [a, b] : pairs) {
    Vector lo(2), hi(2);
    lo << reference.row(a).minCoeff(), reference.row(b).minCoeff();
    hi << reference.row(a).maxCoeff(), reference.row(b).maxCoeff();
    const auto binning = default_binning({a, b}, lo, hi,
                                         static_cast<std::size_t>(std::min(chain.cols(), reference.cols())));
    emit(at_most(fmt::format("{} tv c{},c{}", prefix, a, b), histogram_tv(chain, reference, binning),
                 limit));
  }
}

//---------------------------------------------------------------------------//
// 3. Simplex
//---------------------------------------------------------------------------//
void criterion3() {
  const auto body = make_simplex(4);
  ChainConfig config;
  config.steps = 1000000;
  config.burn_in = 10000;
  config.seed = 3003;
  const Matrix chain = run_chain(*body, config);
  Matrix p(4, chain.cols());
  for (Eigen::Index j = 0; j < chain.cols(); ++j) p.col(j) = simplex_ambient(4, chain.col(j));
  for (Eigen::Index i = 0; i < 4; ++i) {
    const auto v = row_copy(p, i);
    const double m = mean(v);
    const double s = stddev(v);
    emit(within_band(fmt::format("c3 simplex(4) mean p{}", i), m, 0.25, 0.004));
    emit(within_band(fmt::format("c3 simplex(4) variance p{}", i), s * s, 0.0375, 0.05 * 0.0375));
  }
  auto oracle = oracle_for(*body);
  RandomSource rng(3004);
  const Matrix reference = oracle->draw_many(1000000, rng);
  projected_tv("c3 simplex(4)", chain, reference, 0.03, {{0, 1}, {0, 2}, {1, 2}});
}

//---------------------------------------------------------------------------//
// 4. Quantum states
//---------------------------------------------------------------------------//
std::vector<double> sorted_eigenvalues(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void criterion4() {
  {
    const auto body = make_density(2);
    ChainConfig config;
    config.steps = 1000000;
    config.burn_in = 10000;
    config.seed = 4004;
    double sum_sq = 0.0;
    std::size_t n = 0, negative = 0;
    run_chain(*body, config, [&](std::size_t, const Vector& x) {
      sum_sq += x.squaredNorm();
      ++n;
      if (min_eigenvalue(body_density_matrix(*body, x)) < -1e-10) ++negative;
    });
    emit(within_band("c4 density(2) E|tau|^2", sum_sq / static_cast<double>(n), 0.3, 0.003));
    emit(within_band("c4 density(2) fraction with min eigenvalue >= -1e-10",
                     1.0 - static_cast<double>(negative) / static_cast<double>(n), 1.0, 0.0));
  }
  {
    const auto body = make_ppt(2);
    ChainConfig config;
    config.steps = 100000;
    config.burn_in = 10000;
    config.seed = 4005;
    std::vector<std::vector<double>> chain_ev(4), oracle_ev(4);
    std::size_t n = 0, bad = 0;
    run_chain(*body, config, [&](std::size_t, const Vector& x) {
      const CMatrix rho = body_density_matrix(*body, x);
      ++n;
      if (min_eigenvalue(rho) < -1e-10 || !is_ppt(rho, 2, 1e-10)) ++bad;
      const auto ev = sorted_eigenvalues(rho);
      for (int k = 0; k < 4; ++k) chain_ev[k].push_back(ev[k]);
    });
    emit(within_band("c4 ppt(2) fraction positive and PPT at 1e-10",
                     1.0 - static_cast<double>(bad) / static_cast<double>(n), 1.0, 0.0));
    auto oracle = oracle_for(*body);
    RandomSource rng(4006);
    for (int i = 0; i < 100000; ++i) {
      const auto ev = sorted_eigenvalues(body_density_matrix(*body, oracle->draw(rng)));
      for (int k = 0; k < 4; ++k) oracle_ev[k].push_back(ev[k]);
    }
    for (int k = 0; k < 4; ++k) {
      emit(at_most(fmt::format("c4 ppt(2) KS eigenvalue {}", k),
                   ks_distance(chain_ev[k], oracle_ev[k]), 0.03));
    }
  }
}

//---------------------------------------------------------------------------//
// 5. Birkhoff polytope
//---------------------------------------------------------------------------//
void criterion5() {
  const auto body = make_birkhoff(3);
  auto oracle = oracle_for(*body);
  RandomSource rng(5005);
  const Matrix reference = oracle->draw_many(1000000, rng);
  for (auto algorithm : {Algorithm::fixed_basis, Algorithm::random_direction}) {
    ChainConfig config;
    config.algorithm = algorithm;
    config.steps = 1000000;
    config.burn_in = 10000;
    config.seed = 5006;
    const Matrix chain = run_chain(*body, config);
    Matrix entries = Matrix::Zero(3, 3);
    for (Eigen::Index j = 0; j < chain.cols(); ++j) entries += birkhoff_matrix(3, chain.col(j));
    entries /= static_cast<double>(chain.cols());
    const std::string prefix = fmt::format("c5 birkhoff(3) {}", to_string(algorithm));
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        emit(within_band(fmt::format("{} mean B{}{}", prefix, a, b), entries(a, b), 1.0 / 3.0,
                         0.005));
      }
    }
    projected_tv(prefix, chain, reference, 0.04, {{0, 1}, {2, 3}});
  }
}

//---------------------------------------------------------------------------//
// 6. Corner hold and adapted basis
//---------------------------------------------------------------------------//
void criterion6() {
  using chordwalk::testing::kCornerA;
  using chordwalk::testing::make_triangle;
  ChainConfig config;
  config.algorithm = Algorithm::fixed_basis;
  config.start = kCornerA;
  config.seed = 6006;
  {
    config.steps = 100000;
    std::size_t moved = 0;
    run_chain(*make_triangle(false), config,
              [&](std::size_t, const Vector& x) { moved += (x == kCornerA) ? 0 : 1; });
    emit_bool("c6 triangle axis basis holds at corner A", moved == 0,
              fmt::format("moved={} of {}", moved, config.steps));
  }
  {
    config.steps = 1000000;
    const Matrix chain = run_chain(*make_triangle(true), config);
    const Vector m = chain.rowwise().mean();
    emit(within_band("c6 triangle adapted basis mean x", m[0], 1.0, 0.01));
    emit(within_band("c6 triangle adapted basis mean y", m[1], 1.0, 0.01));
  }
}

//---------------------------------------------------------------------------//
// 7. CLT scaling and the LIL envelope
//---------------------------------------------------------------------------//
void criterion7() {
  const auto body = make_box(1);
  ChainConfig config;
  config.steps = 1000000;
  config.seed = 7007;
  const Matrix chain = run_chain(*body, config);
  const std::vector<double> x(chain.data(), chain.data() + chain.size());

  // L Var(batch mean) estimates the asymptotic variance for every L.
  std::map<std::size_t, double> scaled;
  for (std::size_t L : {100u, 1000u, 10000u}) {
    const auto bm = clt_batch_means(x, x.size() / L);
    scaled[L] = bm.batch_variance * static_cast<double>(L);
    std::cout << fmt::format("info c7 L={} batches={} L*var={:.6g}\n", L, bm.batch_count, scaled[L]);
  }
  for (std::size_t L : {1000u, 10000u}) {
    const double ratio = scaled[L] / scaled[100];
    const bool ok = ratio <= 1.5 && ratio >= 1.0 / 1.5;
    emit_bool(fmt::format("c7 box(1) batch variance scaling L=100 vs L={}", L), ok,
              fmt::format("ratio={:.4g} limit=1.5", ratio));
  }
  const double sigma = std::sqrt(scaled[1000]);
  std::vector<double> z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) z[j] = x[j] / sigma;
  emit(at_most("c7 box(1) lil envelope", lil_envelope(z), 3.0));
}

//---------------------------------------------------------------------------//
// 8. Determinism of the command-line output
//---------------------------------------------------------------------------//
std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

void criterion8() {
  const std::vector<std::string> bodies{"ball:d=3",     "box:d=5",      "simplex:n=4",
                                        "stochastic:n=3", "birkhoff:n=3", "density:n=2",
                                        "ppt:k=2",      "lifted:f=tent/ball:d=2"};
  for (const auto& text : bodies) {
    const auto body = make_body(text);
    for (auto algorithm : {Algorithm::fixed_basis, Algorithm::random_direction}) {
      if (algorithm == Algorithm::fixed_basis && !body->metadata().basis) continue;
      for (const char* chains : {"1", "3"}) {
        std::vector<std::string> args{"sample",  text,     "--algorithm", to_string(algorithm),
                                      "--steps", "2000",   "--seed",      "8008",
                                      "--chains", chains,  "--quasi-concave"};
        if (body->ambient(body->metadata().x_star)) args.push_back("--ambient");
        int c1 = 0, c2 = 0;
        const auto first = run_cli(args, c1);
        const auto second = run_cli(args, c2);
        emit_bool(fmt::format("c8 {} {} chains={} byte-identical", text, to_string(algorithm),
                              chains),
                  c1 == 0 && c2 == 0 && !first.empty() && first == second,
                  fmt::format("bytes={}", first.size()));
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<void()>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion k]...\n";
      return 2;
    }
  }
  if (selected.empty()) {
    for (const auto& [k, _] : criteria) selected.push_back(k);
  }
  for (int k : selected) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << k << '\n';
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      it->second();
    } catch (const std::exception& e) {
      emit_fail(fmt::format("c{}", k), fmt::format("exception: {}", e.what()));
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cout << fmt::format("info c{} finished in {:.1f} s\n", k, elapsed.count());
  }
  return failures == 0 ? 0 : 1;
}
