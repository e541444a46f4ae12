#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chenbound::cli {

enum ExitCode : int { ok = 0, numeric_failure = 1, usage_error = 2 };

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace chenbound::cli
