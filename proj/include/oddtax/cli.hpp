#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oddtax {

/// Process exit codes.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFindings = 1,
  kExitUsage = 2,
};

/// Runs the `oddtax` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace oddtax
