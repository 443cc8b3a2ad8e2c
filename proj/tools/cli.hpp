#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace roblev::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDataError = 3,
  kFormulaError = 4,
  kRankDeficient = 5,
  kMcdFailure = 6,
  kModifiedDesignSingular = 7,
};

// Runs the command line in `args` (without the program name). Reports go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roblev::cli
