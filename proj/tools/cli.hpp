#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fok::cli {

enum ExitCode : int {
  kValid = 0,
  kRefuted = 1,
  kUsage = 2,
  kInvalidInput = 3,
};

/// Runs the `fok` command line. `args` excludes the program name. Output goes
/// to `out`, diagnostics and the timing line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fok::cli
