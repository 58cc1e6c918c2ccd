#include "chordwalk/random.hpp"

#include <cassert>

namespace chordwalk {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent ^ splitmix64(index + kGoldenGamma));
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() { return normal_(engine_); }

std::size_t RandomSource::index(std::size_t n) {
  assert(n > 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  return pick(engine_);
}

RandomSource RandomSource::spawn(std::uint64_t stream) const {
  return RandomSource(derive_seed(seed_, stream));
}

}  // namespace chordwalk
