#pragma once

#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace ulindley::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kUsage = 2,
    kDataError = 3,
    kEstimationError = 4,
    kNonConvergence = 5,
};

/// Exit status for an error escaping a command.
int exit_code_for(const std::exception& error);

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; `--data -` reads from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin);

}  // namespace ulindley::cli
