#ifndef DEXCUBE_TOOLS_CLI_HPP
#define DEXCUBE_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dexcube::cli {

enum ExitCode : int {
  kOk = 0,
  kOutOfBounds = 2,
  kUnreachable = 3,
  kUsage = 64,
  kBudgetExhausted = 65,
  kIoError = 66,
};

/// Runs the command line (without the program name). Primary output goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dexcube::cli

#endif  // DEXCUBE_TOOLS_CLI_HPP
