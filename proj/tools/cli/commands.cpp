#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <openssl/evp.h>
#include <fmt/chrono.h>
#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordwalk/bounds.hpp"
#include "chordwalk/descriptor.hpp"
#include "chordwalk/diagnostics.hpp"
#include "chordwalk/io.hpp"
#include "chordwalk/oracle.hpp"
#include "chordwalk/sampler.hpp"
#include "chordwalk/version.hpp"

namespace chordwalk::cli {

namespace {

// Carries an exit code out of a command.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

// Stream used to draw the oracle sample in `compare`, distinct from every
// chain index a user could request.
constexpr std::uint64_t kOracleStream = 0x6f7261636c65ULL;

struct SampleOptions {
  std::string body;
  std::string algorithm = "random_direction";
  std::string steps = "1000";
  std::string burn_in = "0";
  std::string thin = "1";
  std::uint64_t seed = 0;
  int chains = 1;
  std::string format = "csv";
  std::string out;
  bool ambient = false;
  bool quasi_concave = false;
};

struct BoundOptions {
  std::string body;
  std::string algorithm;
  std::string variant = "conservative";
  std::optional<double> eps;
};

struct CompareOptions {
  std::string body;
  std::string algorithm = "random_direction";
  std::string steps = "1e6";
  std::string burn_in = "1e4";
  std::string thin = "1";
  std::uint64_t seed = 0;
  std::string oracle_samples;
  double sigma_band = 4.0;
  double tv_band = 0.03;
  double ad_threshold = 1.035;
  double lil_limit = 3.0;
  bool json = false;
  bool quasi_concave = false;
};

struct InspectOptions {
  std::string file;
  std::string convert;
  std::string out;
};

std::size_t count_arg(const std::string& text, const char* flag) {
  try {
    return parse_count(text);
  } catch (const std::invalid_argument& e) {
    fail(kBadArguments, fmt::format("{}: {}", flag, e.what()));
  }
}

struct LoadedBody {
  BodyDescriptor descriptor;
  BodyPtr body;
};

LoadedBody load_body(const std::string& text, bool quasi_concave_required, bool quasi_concave) {
  LoadedBody loaded;
  try {
    loaded.descriptor = parse_descriptor(text);
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }
  if (quasi_concave_required && loaded.descriptor.kind == BodyKind::lifted && !quasi_concave) {
    fail(kBadArguments,
         "lifted bodies sample correctly only for quasi-concave densities; "
         "pass --quasi-concave to assert it");
  }
  try {
    loaded.body = make_body(loaded.descriptor);
  } catch (const std::exception& e) {
    fail(kBodyConstruction, e.what());
  }
  return loaded;
}

Algorithm algorithm_arg(const std::string& text) {
  try {
    return parse_algorithm(text);
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }
}

void validate_config(const Body& body, const ChainConfig& config) {
  try {
    validate(body, config);
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

//---------------------------------------------------------------------------//
// sample
//---------------------------------------------------------------------------//
int cmd_sample(const SampleOptions& o, std::ostream& out) {
  const auto [descriptor, body] = load_body(o.body, true, o.quasi_concave);
  ChainConfig config;
  config.algorithm = algorithm_arg(o.algorithm);
  config.steps = count_arg(o.steps, "--steps");
  config.burn_in = count_arg(o.burn_in, "--burn-in");
  config.thin = count_arg(o.thin, "--thin");
  config.seed = o.seed;
  if (o.chains < 1) fail(kBadArguments, "--chains must be >= 1");
  validate_config(*body, config);

  const Vector& x_star = body->metadata().x_star;
  int ambient_width = 0;
  if (o.ambient) {
    const auto probe = body->ambient(x_star);
    if (!probe) fail(kBadArguments, body->label() + " has no ambient form beyond its chart");
    ambient_width = static_cast<int>(probe->size());
  }
  const Format format = parse_format(o.format);

  OutputHeader header;
  header.version = kVersion;
  header.descriptor = to_string(descriptor);
  header.algorithm = to_string(config.algorithm);
  header.seed = o.seed;
  header.coordinates = body->dim();
  header.ambient = ambient_width;

  const bool to_file = !o.out.empty() && o.out != "-";
  std::ofstream file;
  if (to_file) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) fail(kBadArguments, "cannot open " + o.out + " for writing");
  }
  std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : out;

  try {
    SampleWriter writer(sink, format, header);
    auto emit = [&](int chain, std::uint64_t step, const Vector& x) {
      writer.write(chain, step, x, o.ambient ? *body->ambient(x) : Vector());
    };
    if (o.chains == 1) {
      // Chain i is always seeded with derive_seed(seed, i), so a single chain
      // matches chain 0 of a multi-chain run.
      ChainConfig single = config;
      single.seed = derive_seed(o.seed, 0);
      run_chain(*body, single, [&](std::size_t step, const Vector& x) { emit(0, step, x); });
    } else {
      const auto chains = run_chains(*body, config, o.chains);
      for (int c = 0; c < o.chains; ++c) {
        const Matrix& m = chains[static_cast<std::size_t>(c)];
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          const auto step = config.burn_in + static_cast<std::size_t>(j + 1) * config.thin;
          emit(c, step, m.col(j));
        }
      }
    }
    sink.flush();
  } catch (const Failure&) {
    throw;
  } catch (const std::exception& e) {
    fail(kSamplingFailure, e.what());
  }
  if (!sink) fail(kSamplingFailure, "write error on output");

  if (to_file) {
    file.close();
    nlohmann::ordered_json manifest;
    manifest["tool"] = "chordwalk";
    manifest["version"] = kVersion;
    manifest["descriptor"] = header.descriptor;
    manifest["config"] = {{"algorithm", header.algorithm},
                          {"steps", config.steps},
                          {"burn_in", config.burn_in},
                          {"thin", config.thin},
                          {"seed", o.seed},
                          {"chains", o.chains},
                          {"format", to_string(format)},
                          {"ambient", o.ambient}};
    manifest["timestamp"] = utc_timestamp();
    manifest["output"] = o.out;
    manifest["sha256"] = sha256_file(o.out);
    std::ofstream side(o.out + ".manifest.json", std::ios::binary | std::ios::trunc);
    side << manifest.dump(2) << '\n';
    if (!side) fail(kSamplingFailure, "cannot write manifest for " + o.out);
  }
  return kOk;
}

//---------------------------------------------------------------------------//
// bound
//---------------------------------------------------------------------------//
int cmd_bound(const BoundOptions& o, std::ostream& out) {
  const auto [descriptor, body] = load_body(o.body, false, false);
  const Algorithm algorithm = algorithm_arg(o.algorithm);
  BoundVariant variant;
  try {
    variant = parse_variant(o.variant);
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }
  if (o.eps && !(*o.eps > 0.0)) fail(kBadArguments, "--eps must be positive");

  RateBound bound;
  try {
    bound = body_bound(*body, algorithm, variant);
  } catch (const std::domain_error& e) {
    fail(kSamplingFailure, e.what());
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }

  const auto& m = body->metadata();
  out << fmt::format("body={} algorithm={}", to_string(descriptor), to_string(algorithm));
  if (algorithm == Algorithm::random_direction) out << " variant=" << to_string(variant);
  out << '\n';
  out << fmt::format("d={} r={:.17g} R={:.17g} mu={:.17g}", m.d, m.r, m.R, m.ratio());
  if (algorithm == Algorithm::fixed_basis) out << fmt::format(" k={} l={}", *m.k, *m.l());
  out << '\n';
  out << fmt::format("M={}\n", bound.M);
  out << fmt::format("theta={:.17g}\n", bound.theta);
  out << fmt::format("log10_theta={:.17g}\n", bound.log_theta / std::log(10.0));
  out << fmt::format("alpha={:.17g}\n", bound.alpha);
  out << fmt::format("C={:.17g}\n", bound.C);
  if (o.eps) {
    out << fmt::format("eps={:.17g}\n", *o.eps);
    out << fmt::format("steps={:.17g}\n", steps_to_tolerance(bound, *o.eps));
    out << fmt::format("log10_steps={:.17g}\n", log10_steps_to_tolerance(bound, *o.eps));
  }
  return kOk;
}

//---------------------------------------------------------------------------//
// compare
//---------------------------------------------------------------------------//
std::vector<double> row_of(const Matrix& m, Eigen::Index i) {
  std::vector<double> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) v[static_cast<std::size_t>(j)] = m(i, j);
  return v;
}

double iid_stderr(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0) / n);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const auto [descriptor, body] = load_body(o.body, true, o.quasi_concave);
  ChainConfig config;
  config.algorithm = algorithm_arg(o.algorithm);
  config.steps = count_arg(o.steps, "--steps");
  config.burn_in = count_arg(o.burn_in, "--burn-in");
  config.thin = count_arg(o.thin, "--thin");
  config.seed = derive_seed(o.seed, 0);
  validate_config(*body, config);
  const std::size_t emitted = config.steps / config.thin;
  if (emitted < 1000) fail(kBadArguments, "compare needs at least 1000 emitted points");
  const std::size_t oracle_n =
      o.oracle_samples.empty() ? emitted : count_arg(o.oracle_samples, "--oracle-samples");
  if (oracle_n < 1000) fail(kBadArguments, "--oracle-samples must be >= 1000");

  auto oracle = oracle_for(*body);
  if (!oracle) fail(kOracleUnavailable, "no oracle sampler for " + body->label());

  Matrix chain;
  Matrix reference;
  try {
    chain = run_chain(*body, config);
    RandomSource rng(derive_seed(o.seed, kOracleStream));
    reference = oracle->draw_many(oracle_n, rng);
  } catch (const std::exception& e) {
    fail(kSamplingFailure, e.what());
  }

  Report report;
  const int d = body->dim();
  const Vector& x_star = body->metadata().x_star;

  for (int i = 0; i < d; ++i) {
    const auto c = row_of(chain, i);
    const auto r = row_of(reference, i);
    const double se = std::hypot(batch_means_stderr(c), iid_stderr(r));
    report.checks.push_back(
        within_band(fmt::format("mean c{}", i), mean_of(c), mean_of(r), o.sigma_band * se));
  }
  {
    std::vector<double> c(static_cast<std::size_t>(chain.cols()));
    std::vector<double> r(static_cast<std::size_t>(reference.cols()));
    for (Eigen::Index j = 0; j < chain.cols(); ++j) {
      c[static_cast<std::size_t>(j)] = (chain.col(j) - x_star).squaredNorm();
    }
    for (Eigen::Index j = 0; j < reference.cols(); ++j) {
      r[static_cast<std::size_t>(j)] = (reference.col(j) - x_star).squaredNorm();
    }
    const double se = std::hypot(batch_means_stderr(c), iid_stderr(r));
    report.checks.push_back(
        within_band("mean |x - x*|^2", mean_of(c), mean_of(r), o.sigma_band * se));
  }

  // Projected histograms on disjoint coordinate pairs (at most three).
  for (int a = 0; a < d && a < 6; a += 2) {
    std::vector<int> axes{a};
    if (a + 1 < d) axes.push_back(a + 1);
    Vector lo(static_cast<Eigen::Index>(axes.size()));
    Vector hi(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t k = 0; k < axes.size(); ++k) {
      lo[static_cast<Eigen::Index>(k)] = reference.row(axes[k]).minCoeff();
      hi[static_cast<Eigen::Index>(k)] = reference.row(axes[k]).maxCoeff();
    }
    const auto binning = default_binning(axes, lo, hi, std::min(emitted, oracle_n));
    const std::string name = axes.size() == 2 ? fmt::format("tv c{},c{}", axes[0], axes[1])
                                              : fmt::format("tv c{}", axes[0]);
    report.checks.push_back(at_most(name, histogram_tv(chain, reference, binning), o.tv_band));
  }

  const auto c0 = row_of(chain, 0);
  const double tau = integrated_autocorrelation_time(c0);
  report.checks.push_back(
      at_most("iact c0", tau, static_cast<double>(emitted) / 100.0));

  const auto batches = clt_batch_means(c0, 30);
  report.checks.push_back(at_most("anderson-darling c0 batch means",
                                  batches.anderson_darling, o.ad_threshold));

  {
    const double oracle_mean = reference.row(0).mean();
    const double sigma =
        std::sqrt(batches.batch_variance * static_cast<double>(batches.batch_length));
    std::vector<double> z(c0.size());
    for (std::size_t j = 0; j < c0.size(); ++j) z[j] = (c0[j] - oracle_mean) / sigma;
    report.checks.push_back(at_most("lil envelope c0", lil_envelope(z), o.lil_limit));
  }

  {
    std::size_t inside = 0;
    for (Eigen::Index j = 0; j < chain.cols(); ++j) inside += body->contains(chain.col(j)) ? 1 : 0;
    report.checks.push_back(within_band(
        "fraction inside", static_cast<double>(inside) / static_cast<double>(chain.cols()), 1.0,
        0.0));
  }

  if (o.json) {
    nlohmann::ordered_json j;
    j["body"] = to_string(descriptor);
    j["algorithm"] = to_string(config.algorithm);
    j["steps"] = config.steps;
    j["burn_in"] = config.burn_in;
    j["seed"] = o.seed;
    j["oracle"] = oracle->description();
    j["oracle_acceptance"] = oracle->acceptance().rate();
    j["report"] = nlohmann::json::parse(report.to_json());
    out << j.dump(2) << '\n';
  } else {
    out << fmt::format("body={} algorithm={} steps={} burn_in={} seed={}\n",
                       to_string(descriptor), to_string(config.algorithm), config.steps,
                       config.burn_in, o.seed);
    out << fmt::format("oracle: {} (acceptance {:.4g})\n", oracle->description(),
                       oracle->acceptance().rate());
    out << report.to_text();
    out << (report.pass() ? "overall PASS\n" : "overall FAIL\n");
  }
  return report.pass() ? kOk : kCheckFailed;
}

//---------------------------------------------------------------------------//
// inspect
//---------------------------------------------------------------------------//
int cmd_inspect(const InspectOptions& o, std::ostream& out) {
  std::ifstream in(o.file, std::ios::binary);
  if (!in) fail(kBadArguments, "cannot open " + o.file);
  SampleFile file;
  try {
    file = read_samples(in);
  } catch (const std::exception& e) {
    fail(kBadArguments, e.what());
  }

  if (!o.convert.empty()) {
    Format format;
    try {
      format = parse_format(o.convert);
    } catch (const std::exception& e) {
      fail(kBadArguments, e.what());
    }
    const bool to_file = !o.out.empty() && o.out != "-";
    std::ofstream target;
    if (to_file) {
      target.open(o.out, std::ios::binary | std::ios::trunc);
      if (!target) fail(kBadArguments, "cannot open " + o.out + " for writing");
    }
    std::ostream& sink = to_file ? static_cast<std::ostream&>(target) : out;
    SampleWriter writer(sink, format, file.header);
    for (const auto& row : file.rows) writer.write(row);
    return kOk;
  }

  const auto& h = file.header;
  int chains = 0;
  for (const auto& row : file.rows) chains = std::max(chains, row.chain + 1);
  out << fmt::format("format={}\nversion={}\nbody={}\nalgorithm={}\nseed={}\n", to_string(file.format),
                     h.version, h.descriptor, h.algorithm, h.seed);
  out << fmt::format("rows={}\nchains={}\ncoordinates={}\nambient={}\n", file.rows.size(), chains,
                     h.coordinates, h.ambient);
  if (!file.rows.empty()) {
    Vector mean = Vector::Zero(h.coordinates);
    for (const auto& row : file.rows) mean += row.coords;
    mean /= static_cast<double>(file.rows.size());
    for (int i = 0; i < h.coordinates; ++i) out << fmt::format("mean c{}={:.17g}\n", i, mean[i]);
  }
  return kOk;
}

}  // namespace

std::size_t parse_count(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v) || v < 0.0 ||
      v != std::floor(v) || v > 9007199254740992.0) {
    throw std::invalid_argument("expected a non-negative integer count, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chord-walk samplers for convex bodies", "chordwalk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Run chains and write the emitted points");
  sample->add_option("body", so.body, "Body descriptor, e.g. simplex:n=4")->required();
  sample->add_option("--algorithm", so.algorithm, "fixed_basis or random_direction");
  sample->add_option("--steps", so.steps, "Emitted-phase steps (1e6 style accepted)");
  sample->add_option("--burn-in", so.burn_in, "Steps discarded before emitting");
  sample->add_option("--thin", so.thin, "Emit every thin-th step");
  sample->add_option("--seed", so.seed, "Root seed");
  sample->add_option("--chains", so.chains, "Independent chains, run concurrently");
  sample->add_option("--format", so.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sample->add_option("--out", so.out, "Output file (default stdout); writes <out>.manifest.json");
  sample->add_flag("--ambient", so.ambient, "Also emit ambient coordinates (m0, m1, ...)");
  sample->add_flag("--quasi-concave", so.quasi_concave,
                   "Assert the lifted density is quasi-concave");

  BoundOptions bo;
  auto* bound = app.add_subcommand("bound", "Print the convergence bound for a body");
  bound->add_option("body", bo.body, "Body descriptor")->required();
  bound->add_option("--algorithm", bo.algorithm, "fixed_basis or random_direction")->required();
  bound->add_option("--variant", bo.variant, "as_stated or conservative (random_direction)");
  bound->add_option("--eps", bo.eps, "Report the steps needed for C alpha^n <= eps");

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "Compare a chain against the oracle sampler");
  compare->add_option("body", co.body, "Body descriptor")->required();
  compare->add_option("--algorithm", co.algorithm, "fixed_basis or random_direction");
  compare->add_option("--steps", co.steps, "Chain steps after burn-in");
  compare->add_option("--burn-in", co.burn_in, "Steps discarded first");
  compare->add_option("--thin", co.thin, "Keep every thin-th step");
  compare->add_option("--seed", co.seed, "Root seed");
  compare->add_option("--oracle-samples", co.oracle_samples, "Oracle draws (default: chain points)");
  compare->add_option("--sigma-band", co.sigma_band, "Mean bands in joint standard errors");
  compare->add_option("--tv-band", co.tv_band, "Largest accepted projected TV distance");
  compare->add_option("--ad-threshold", co.ad_threshold,
                      "Largest accepted Anderson-Darling A*^2 of batch means");
  compare->add_option("--lil-limit", co.lil_limit, "Largest accepted LIL envelope");
  compare->add_flag("--json", co.json, "JSON report");
  compare->add_flag("--quasi-concave", co.quasi_concave,
                    "Assert the lifted density is quasi-concave");

  InspectOptions io;
  auto* inspect = app.add_subcommand("inspect", "Read a sample file back; summarize or convert it");
  inspect->add_option("file", io.file, "CSV or JSONL file written by sample")->required();
  inspect->add_option("--convert", io.convert, "Re-emit as csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  inspect->add_option("--out", io.out, "Output file for --convert (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadArguments;
  }

  try {
    if (*sample) return cmd_sample(so, out);
    if (*bound) return cmd_bound(bo, out);
    if (*compare) return cmd_compare(co, out);
    if (*inspect) return cmd_inspect(io, out);
  } catch (const Failure& f) {
    err << "chordwalk: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "chordwalk: " << e.what() << '\n';
    return kSamplingFailure;
  }
  return kBadArguments;
}

}  // namespace chordwalk::cli
