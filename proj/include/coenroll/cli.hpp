#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coenroll {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_data = 3,
    exit_infeasible = 4,
};

/// Runs one command line (args[0] is the program name). Data goes to
/// --out (written to a temporary file, then renamed) or to `out`; the
/// one-line summary and diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coenroll
