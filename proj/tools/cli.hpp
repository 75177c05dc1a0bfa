#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compactness::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int { kOk = 0, kNegative = 1, kError = 2 };

/// Runs one subcommand. `args` excludes the program name. The report goes to
/// `out`; `--input -` reads from `in`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::istream& in);

}  // namespace compactness::cli
