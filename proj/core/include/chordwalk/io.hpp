#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chordwalk/types.hpp"

namespace chordwalk {

enum class Format { csv, jsonl };

const char* to_string(Format format);
Format parse_format(const std::string& text);

/// "%.17g": enough digits for strtod to recover the same double.
std::string format_double(double value);

struct OutputHeader {
  std::string version;
  std::string descriptor;
  std::string algorithm;
  std::uint64_t seed = 0;
  int coordinates = 0;
  /// Number of ambient columns (m0, m1, ...); 0 when not requested.
  int ambient = 0;
};

struct SampleRow {
  int chain = 0;
  std::uint64_t step = 0;
  Vector coords;
  Vector ambient;
};

/// Streams rows in either format. CSV starts with
///   # chordwalk v<version> body=<descriptor> algorithm=<a> seed=<s>
///   chain,step,c0,...[,m0,...]
/// JSONL starts with one header object, then one object per row with keys
/// chain, step, c0, ... in that order.
class SampleWriter {
 public:
  SampleWriter(std::ostream& out, Format format, OutputHeader header);

  void write(const SampleRow& row);
  void write(int chain, std::uint64_t step, const Vector& coords,
             const Vector& ambient = Vector());

 private:
  std::ostream& out_;
  Format format_;
  OutputHeader header_;
};

struct SampleFile {
  Format format = Format::csv;
  OutputHeader header;
  std::vector<SampleRow> rows;
};

/// Reads a file produced by SampleWriter; the format is detected from the
/// first byte. Throws Error on malformed input.
SampleFile read_samples(std::istream& in);

}  // namespace chordwalk
