#include "chordwalk/descriptor.hpp"

#include <charconv>
#include <cmath>

#include "chordwalk/bodies.hpp"

namespace chordwalk {
namespace {

struct KindSpec {
  const char* name;
  BodyKind kind;
  const char* key;
};

constexpr KindSpec kKinds[] = {
    {"ball", BodyKind::ball, "d"},
    {"box", BodyKind::box, "d"},
    {"simplex", BodyKind::simplex, "n"},
    {"stochastic", BodyKind::stochastic, "n"},
    {"birkhoff", BodyKind::birkhoff, "n"},
    {"density", BodyKind::density, "n"},
    {"ppt", BodyKind::ppt, "k"},
};

const KindSpec* find_kind(std::string_view name) {
  for (const auto& spec : kKinds) {
    if (name == spec.name) return &spec;
  }
  return nullptr;
}

const KindSpec* find_kind(BodyKind kind) {
  for (const auto& spec : kKinds) {
    if (kind == spec.kind) return &spec;
  }
  return nullptr;
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw DescriptorError("descriptor '" + std::string(whole) +
                          "': expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

BodyDescriptor parse_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DescriptorError("descriptor '" + std::string(text) +
                          "': expected <kind>:<key>=<value>");
  }
  const auto kind_name = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);

  BodyDescriptor out;
  if (kind_name == "lifted") {
    const auto slash = rest.find('/');
    if (rest.substr(0, 2) != "f=" || slash == std::string_view::npos || slash <= 2) {
      throw DescriptorError("descriptor '" + std::string(text) +
                            "': expected lifted:f=<density>/<inner>");
    }
    out.kind = BodyKind::lifted;
    out.density = std::string(rest.substr(2, slash - 2));
    out.inner = std::make_shared<BodyDescriptor>(parse_descriptor(rest.substr(slash + 1)));
    return out;
  }

  const auto* spec = find_kind(kind_name);
  if (!spec) {
    throw DescriptorError("descriptor '" + std::string(text) + "': unknown kind '" +
                          std::string(kind_name) + "'");
  }
  const auto eq = rest.find('=');
  if (eq == std::string_view::npos || rest.substr(0, eq) != spec->key) {
    throw DescriptorError("descriptor '" + std::string(text) + "': " + spec->name +
                          " takes " + spec->key + "=<int>");
  }
  out.kind = spec->kind;
  out.param = parse_int(rest.substr(eq + 1), text);
  return out;
}

std::string to_string(const BodyDescriptor& descriptor) {
  if (descriptor.kind == BodyKind::lifted) {
    return "lifted:f=" + descriptor.density + "/" +
           (descriptor.inner ? to_string(*descriptor.inner) : std::string("?"));
  }
  const auto* spec = find_kind(descriptor.kind);
  if (!spec) return "polytope";
  return std::string(spec->name) + ":" + spec->key + "=" + std::to_string(descriptor.param);
}

NamedDensity named_density(const std::string& name, const Body& inner) {
  const Vector centre = inner.metadata().x_star;
  const double R = inner.metadata().R;
  if (name == "uniform") {
    return {[](const Vector&) { return 1.0; }, 1.0, true};
  }
  if (name == "tent") {
    return {[centre, R](const Vector& x) {
              return std::max(0.0, 1.0 - (x - centre).norm() / R);
            },
            1.0, true};
  }
  if (name == "gauss") {
    return {[centre, R](const Vector& x) {
              return std::exp(-2.0 * (x - centre).squaredNorm() / (R * R));
            },
            1.0, false};
  }
  throw BodyConstructionError("unknown density '" + name +
                              "' (expected uniform, tent or gauss)");
}

BodyPtr make_body(const BodyDescriptor& descriptor) {
  switch (descriptor.kind) {
    case BodyKind::ball: return make_ball(descriptor.param);
    case BodyKind::box: return make_box(descriptor.param);
    case BodyKind::simplex: return make_simplex(descriptor.param);
    case BodyKind::stochastic: return make_stochastic(descriptor.param);
    case BodyKind::birkhoff: return make_birkhoff(descriptor.param);
    case BodyKind::density: return make_density(descriptor.param);
    case BodyKind::ppt: return make_ppt(descriptor.param);
    case BodyKind::lifted: {
      if (!descriptor.inner) throw BodyConstructionError("lifted: missing inner body");
      if (descriptor.inner->kind == BodyKind::lifted) {
        throw BodyConstructionError("lifted: inner body cannot itself be lifted");
      }
      auto inner = make_body(*descriptor.inner);
      auto density = named_density(descriptor.density, *inner);
      return lift_density(std::move(inner), std::move(density.f), density.f_max,
                          to_string(descriptor), density.concave);
    }
    case BodyKind::polytope: break;
  }
  throw BodyConstructionError("unsupported body kind");
}

BodyPtr make_body(std::string_view text) { return make_body(parse_descriptor(text)); }

}  // namespace chordwalk
