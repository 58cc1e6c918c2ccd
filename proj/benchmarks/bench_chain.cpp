#include <benchmark/benchmark.h>

#include "chordwalk/bounds.hpp"
#include "chordwalk/descriptor.hpp"
#include "chordwalk/oracle.hpp"
#include "chordwalk/sampler.hpp"

using namespace chordwalk;

namespace {

void step_cost(benchmark::State& state, const char* text, Algorithm algorithm) {
  const auto body = make_body(text);
  RandomSource rng(1);
  Vector x = body->metadata().x_star;
  for (auto _ : state) {
    x = step(*body, algorithm, x, rng);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations());
}

void oracle_cost(benchmark::State& state, const char* text) {
  const auto body = make_body(text);
  auto oracle = oracle_for(*body);
  RandomSource rng(2);
  for (auto _ : state) {
    Vector x = oracle->draw(rng);
    benchmark::DoNotOptimize(x.data());
  }
  state.counters["acceptance"] = oracle->acceptance().rate();
}

void body_bound_cost(benchmark::State& state, const char* text) {
  const auto body = make_body(text);
  for (auto _ : state) benchmark::DoNotOptimize(body_bound(*body, Algorithm::fixed_basis).log_theta);
}

}  // namespace

BENCHMARK_CAPTURE(step_cost, ball3_random, "ball:d=3", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, box10_fixed, "box:d=10", Algorithm::fixed_basis);
BENCHMARK_CAPTURE(step_cost, simplex4_random, "simplex:n=4", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, simplex16_random, "simplex:n=16", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, birkhoff3_fixed, "birkhoff:n=3", Algorithm::fixed_basis);
BENCHMARK_CAPTURE(step_cost, birkhoff3_random, "birkhoff:n=3", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, birkhoff6_random, "birkhoff:n=6", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, density2_random, "density:n=2", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, density4_random, "density:n=4", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, ppt2_random, "ppt:k=2", Algorithm::random_direction);
BENCHMARK_CAPTURE(step_cost, lifted_gauss_fixed, "lifted:f=gauss/ball:d=2", Algorithm::fixed_basis);

BENCHMARK_CAPTURE(oracle_cost, simplex4, "simplex:n=4");
BENCHMARK_CAPTURE(oracle_cost, birkhoff3, "birkhoff:n=3");
BENCHMARK_CAPTURE(oracle_cost, birkhoff4, "birkhoff:n=4");
BENCHMARK_CAPTURE(oracle_cost, density3, "density:n=3");
BENCHMARK_CAPTURE(oracle_cost, ppt2, "ppt:k=2");

BENCHMARK_CAPTURE(body_bound_cost, birkhoff6, "birkhoff:n=6");

BENCHMARK_MAIN();
