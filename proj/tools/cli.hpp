#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covnet::cli {

/// Stable exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoOrParse = 1,
  kPrecondition = 2,
  kInfeasible = 3,
};

/// Entry point behind the `covnet` binary. `args` excludes the program name.
/// Documents go to `out` (or --output files), diagnostics and summaries to
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covnet::cli
