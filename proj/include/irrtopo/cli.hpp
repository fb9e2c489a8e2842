#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace irrtopo::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kValidationError = 3,
  kAssertionFailed = 4,
  kUnknown = 5,
};

/// Runs one command line (without the program name) and writes the report to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit hash, printed as 16 lowercase hex digits.
std::string fingerprint(std::string_view text);

}  // namespace irrtopo::cli
