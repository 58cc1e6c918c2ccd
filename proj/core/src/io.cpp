#include "chordwalk/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include "json.hpp"

namespace chordwalk {

const char* to_string(Format format) { return format == Format::csv ? "csv" : "jsonl"; }

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "jsonl") return Format::jsonl;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or jsonl)");
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

SampleWriter::SampleWriter(std::ostream& out, Format format, OutputHeader header)
    : out_(out), format_(format), header_(std::move(header)) {
  if (format_ == Format::csv) {
    out_ << fmt::format("# chordwalk v{} body={} algorithm={} seed={}\n", header_.version,
                        header_.descriptor, header_.algorithm, header_.seed);
    out_ << "chain,step";
    for (int i = 0; i < header_.coordinates; ++i) out_ << ",c" << i;
    for (int i = 0; i < header_.ambient; ++i) out_ << ",m" << i;
    out_ << '\n';
  } else {
    // Hand-built so key order is fixed.
    out_ << fmt::format(
        "{{\"chordwalk\":\"{}\",\"body\":{},\"algorithm\":\"{}\",\"seed\":{},"
        "\"coordinates\":{},\"ambient\":{}}}\n",
        header_.version, nlohmann::json(header_.descriptor).dump(), header_.algorithm,
        header_.seed, header_.coordinates, header_.ambient);
  }
}

void SampleWriter::write(const SampleRow& row) {
  write(row.chain, row.step, row.coords, row.ambient);
}

void SampleWriter::write(int chain, std::uint64_t step, const Vector& coords,
                         const Vector& ambient) {
  if (coords.size() != header_.coordinates || ambient.size() != header_.ambient) {
    throw DimensionError("SampleWriter: row width does not match the header");
  }
  std::string line;
  if (format_ == Format::csv) {
    line = fmt::format("{},{}", chain, step);
    for (Eigen::Index i = 0; i < coords.size(); ++i) line += ',' + format_double(coords[i]);
    for (Eigen::Index i = 0; i < ambient.size(); ++i) line += ',' + format_double(ambient[i]);
  } else {
    line = fmt::format("{{\"chain\":{},\"step\":{}", chain, step);
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
      line += fmt::format(",\"c{}\":{}", i, format_double(coords[i]));
    }
    for (Eigen::Index i = 0; i < ambient.size(); ++i) {
      line += fmt::format(",\"m{}\":{}", i, format_double(ambient[i]));
    }
    line += '}';
  }
  line += '\n';
  out_ << line;
}

namespace {

double parse_double(const std::string& text) {
  // strtod also takes the "inf"/"nan" spellings fmt emits.
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw Error("read_samples: bad number '" + text + "'");
  }
  return v;
}

template <class Int>
Int parse_int(const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("read_samples: bad integer '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// "# chordwalk v0.1.0 body=... algorithm=... seed=..."
OutputHeader parse_csv_banner(const std::string& line) {
  OutputHeader h;
  std::istringstream ss(line);
  std::string hash, name, version;
  ss >> hash >> name >> version;
  if (hash != "#" || name != "chordwalk" || version.size() < 2 || version[0] != 'v') {
    throw Error("read_samples: missing chordwalk header line");
  }
  h.version = version.substr(1);
  std::string token;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error("read_samples: bad header field '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "body") h.descriptor = value;
    else if (key == "algorithm") h.algorithm = value;
    else if (key == "seed") h.seed = parse_int<std::uint64_t>(value);
  }
  return h;
}

SampleFile read_csv(std::istream& in) {
  SampleFile file;
  file.format = Format::csv;
  std::string line;
  std::getline(in, line);
  file.header = parse_csv_banner(line);
  if (!std::getline(in, line)) throw Error("read_samples: missing column line");
  const auto columns = split(line, ',');
  if (columns.size() < 2 || columns[0] != "chain" || columns[1] != "step") {
    throw Error("read_samples: expected 'chain,step,...' columns");
  }
  for (std::size_t i = 2; i < columns.size(); ++i) {
    if (columns[i].starts_with('c')) ++file.header.coordinates;
    else if (columns[i].starts_with('m')) ++file.header.ambient;
    else throw Error("read_samples: unknown column '" + columns[i] + "'");
  }
  const int nc = file.header.coordinates;
  const int na = file.header.ambient;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (fields.size() != columns.size()) throw Error("read_samples: ragged row");
    SampleRow row;
    row.chain = parse_int<int>(fields[0]);
    row.step = parse_int<std::uint64_t>(fields[1]);
    row.coords.resize(nc);
    row.ambient.resize(na);
    for (int i = 0; i < nc; ++i) row.coords[i] = parse_double(fields[2 + i]);
    for (int i = 0; i < na; ++i) row.ambient[i] = parse_double(fields[2 + nc + i]);
    file.rows.push_back(std::move(row));
  }
  return file;
}

SampleFile read_jsonl(std::istream& in) {
  SampleFile file;
  file.format = Format::jsonl;
  std::string line;
  std::getline(in, line);
  try {
    const auto h = nlohmann::json::parse(line);
    file.header.version = h.at("chordwalk").get<std::string>();
    file.header.descriptor = h.at("body").get<std::string>();
    file.header.algorithm = h.at("algorithm").get<std::string>();
    file.header.seed = h.at("seed").get<std::uint64_t>();
    file.header.coordinates = h.at("coordinates").get<int>();
    file.header.ambient = h.at("ambient").get<int>();
    const int nc = file.header.coordinates;
    const int na = file.header.ambient;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      SampleRow row;
      row.chain = j.at("chain").get<int>();
      row.step = j.at("step").get<std::uint64_t>();
      row.coords.resize(nc);
      row.ambient.resize(na);
      for (int i = 0; i < nc; ++i) row.coords[i] = j.at("c" + std::to_string(i)).get<double>();
      for (int i = 0; i < na; ++i) row.ambient[i] = j.at("m" + std::to_string(i)).get<double>();
      file.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("read_samples: ") + e.what());
  }
  return file;
}

}  // namespace

SampleFile read_samples(std::istream& in) {
  const int first = in.peek();
  if (first == '#') return read_csv(in);
  if (first == '{') return read_jsonl(in);
  throw Error("read_samples: unrecognized format");
}

}  // namespace chordwalk
