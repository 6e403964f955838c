#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hillband::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIdentityFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNonConvergence = 4,
};

/// Runs one command line (without the program name). Everything the command
/// prints goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hillband::cli
