#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crep {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitNoSolution = 1,  // infeasible within the bound, degenerate rule, or failed check
    kExitUsage = 2,       // bad arguments, unreadable file, syntax error
};

/// Runs one CLI invocation. `args` includes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crep
