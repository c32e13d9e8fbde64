#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chainspectra::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kRefused = 2,
  kNumerical = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chainspectra::cli
