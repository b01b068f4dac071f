#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qir::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDataError = 1,
  kUsageError = 2,
};

/// Runs the `qir` command line. `args[0]` is the program name. Errors are
/// reported on `err` as a single "error: <Reason>: <message>" line.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace qir::cli
