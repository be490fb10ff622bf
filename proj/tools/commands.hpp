#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinphase::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool color = false;  // colorize diagnostics on `err`
};

/// Runs one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, Streams io);

}  // namespace spinphase::cli
