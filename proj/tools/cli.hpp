#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skapid::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kInconsistent = 1,
  kInvalidInput = 2,
  kNotConverged = 3,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics and caveats to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skapid::cli
