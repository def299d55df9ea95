#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lonely::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kViolation = 1,      // a checked claim failed or a census found violations
  kUsage = 2,          // bad flags, invalid values, unusable files
  kWidthExceeded = 3,  // exact arithmetic would overflow the integer width
};

/// Runs the command line; args excludes the program name. Results go to
/// `out` (JSON unless --table), diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lonely::cli
