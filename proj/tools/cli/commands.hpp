#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chordwalk::cli {

// Exit codes are part of the command-line contract.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,   // compare ran but a diagnostic is outside its band
  kBadArguments = 2,  // includes descriptor grammar errors and refused algorithms
  kBodyConstruction = 3,
  kSamplingFailure = 4,
  kOracleUnavailable = 5,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Data goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a non-negative integer count, accepting forms like "1e6".
std::size_t parse_count(const std::string& text);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace chordwalk::cli
