#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nfrlens::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalFailure = 1,
  kUserError = 2,
};

// Runs the nfrlens command line. `args` excludes the program name. Data and
// tables go to `out`, every diagnostic goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nfrlens::cli
