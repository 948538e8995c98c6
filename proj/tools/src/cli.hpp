#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsieve::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
};

/// Parses argv (without the program name), runs one subcommand and writes
/// the report to `out` (or to --out).  Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsieve::cli
