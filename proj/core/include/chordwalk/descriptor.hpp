#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "chordwalk/geometry.hpp"

namespace chordwalk {

/// Textual body specification. Grammar (version 1):
///
///   ball:d=<int>        box:d=<int>         simplex:n=<int>
///   stochastic:n=<int>  birkhoff:n=<int>    density:n=<int>
///   ppt:k=<int>         lifted:f=<density>/<inner descriptor>
///
/// Densities for `lifted` are evaluated relative to the inner body's x*
/// and outscribed radius R:
///   uniform  f = 1
///   tent     f = max(0, 1 - |x - x*| / R)
///   gauss    f = exp(-2 |x - x*|^2 / R^2)
/// All three are quasi-concave, so axis-parallel slices are intervals.
/// gauss is not concave, so its lift is refused for random directions.
struct BodyDescriptor {
  BodyKind kind = BodyKind::ball;
  int param = 0;
  std::string density;
  std::shared_ptr<const BodyDescriptor> inner;
};

inline constexpr int kDescriptorGrammarVersion = 1;

/// Throws DescriptorError on malformed text. Parameter ranges are checked
/// by make_body.
BodyDescriptor parse_descriptor(std::string_view text);

std::string to_string(const BodyDescriptor& descriptor);

/// Throws BodyConstructionError for invalid parameters.
BodyPtr make_body(const BodyDescriptor& descriptor);
BodyPtr make_body(std::string_view text);

/// Named density over `inner`, and its maximum value. uniform and tent are
/// concave on the inner body; gauss is only quasi-concave.
struct NamedDensity {
  DensityFunction f;
  double f_max = 1.0;
  bool concave = false;
};
NamedDensity named_density(const std::string& name, const Body& inner);

}  // namespace chordwalk
