#include "chordwalk/sampler.hpp"

#include <exception>
#include <thread>

namespace chordwalk {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::fixed_basis: return "fixed_basis";
    case Algorithm::random_direction: return "random_direction";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "fixed_basis") return Algorithm::fixed_basis;
  if (text == "random_direction") return Algorithm::random_direction;
  throw std::invalid_argument("unknown algorithm '" + text +
                              "' (expected fixed_basis or random_direction)");
}

Vector sample_direction(int d, RandomSource& rng) {
  if (d < 1) throw std::invalid_argument("sample_direction: d must be >= 1");
  Vector e(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) e[i] = rng.normal();
    norm2 = e.squaredNorm();
  } while (!(norm2 > 0.0));
  return e / std::sqrt(norm2);
}

namespace {

Vector move_along(const Body& body, const Vector& x, const Vector& e,
                  RandomSource& rng) {
  const Chord c = body.chord(x, e);
  const double u = rng.uniform();
  if (c.degenerate()) return x;
  return x + (c.t_min + u * c.length()) * e;
}

}  // namespace

Vector step_fixed_basis(const Body& body, const Vector& x, RandomSource& rng) {
  const auto& basis = body.metadata().basis;
  if (!basis || basis->cols() == 0) {
    throw AccessibilityError(body.label() +
                             ": no accessibility basis; only random_direction applies");
  }
  const auto i = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(basis->cols())));
  return move_along(body, x, basis->col(i), rng);
}

Vector step_random_direction(const Body& body, const Vector& x, RandomSource& rng) {
  const Vector e = sample_direction(body.dim(), rng);
  return move_along(body, x, e, rng);
}

Vector step(const Body& body, Algorithm algorithm, const Vector& x, RandomSource& rng) {
  return algorithm == Algorithm::fixed_basis ? step_fixed_basis(body, x, rng)
                                             : step_random_direction(body, x, rng);
}

void validate(const Body& body, const ChainConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("chain: steps must be >= 1");
  if (config.thin < 1) throw std::invalid_argument("chain: thin must be >= 1");
  if (config.algorithm == Algorithm::fixed_basis) {
    const auto& basis = body.metadata().basis;
    if (!basis || basis->cols() == 0) {
      throw AccessibilityError(body.label() +
                               ": no accessibility basis; only random_direction applies");
    }
  }
  if (config.algorithm == Algorithm::random_direction && !body.metadata().convex) {
    throw std::invalid_argument(body.label() +
                                ": random-direction chords may have gaps on a non-convex "
                                "lifted body; use fixed_basis");
  }
  if (config.start && !body.contains(*config.start)) {
    throw OutsideBodyError(body.label() + ": start point is outside the body");
  }
}

void run_chain(const Body& body, const ChainConfig& config, const ChainSink& sink) {
  validate(body, config);
  RandomSource rng(config.seed);
  Vector x = config.start ? *config.start : body.metadata().x_star;
  const std::size_t total = config.burn_in + config.steps;
  for (std::size_t s = 0; s < total; ++s) {
    x = step(body, config.algorithm, x, rng);
    if (s >= config.burn_in && (s - config.burn_in + 1) % config.thin == 0) {
      sink(s + 1, x);
    }
  }
}

Matrix run_chain(const Body& body, const ChainConfig& config) {
  validate(body, config);
  const auto count = static_cast<Eigen::Index>(config.steps / config.thin);
  Matrix out(body.dim(), count);
  Eigen::Index col = 0;
  run_chain(body, config, [&](std::size_t, const Vector& x) { out.col(col++) = x; });
  return out;
}

std::vector<Matrix> run_chains(const Body& body, const ChainConfig& config, int chains) {
  if (chains < 1) throw std::invalid_argument("run_chains: chains must be >= 1");
  validate(body, config);
  std::vector<Matrix> results(static_cast<std::size_t>(chains));
  std::vector<std::exception_ptr> errors(results.size());
  std::vector<std::thread> workers;
  workers.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        ChainConfig local = config;
        local.seed = derive_seed(config.seed, i);
        results[i] = run_chain(body, local);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace chordwalk
