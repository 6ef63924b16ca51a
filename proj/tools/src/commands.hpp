#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cavity::cli {

enum ExitCode { success = 0, verification_failed = 1, invalid_input = 2 };

/// Parses args (args[0] is the program name), runs the subcommand and returns
/// the process exit code.  Plot data goes to --out or `out`; diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cavity::cli
