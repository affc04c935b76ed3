#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace undersolve::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kUncertified = 1,    // check: no norm certifies
  kNotConverged = 2,   // max iterations or stagnation
  kDiverged = 3,       // divergence; also an inconsistent system under `rref`
  kInputError = 4,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace undersolve::cli
