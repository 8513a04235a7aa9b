#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extform::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifiedFalse = 1,
  kInputError = 2,
  kBudgetExceeded = 3,
};

/// Runs one `extform` command line (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extform::cli
