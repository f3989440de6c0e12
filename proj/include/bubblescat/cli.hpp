#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bubblescat {

enum ExitCode : int { EXIT_OK = 0, EXIT_NUMERICAL_FLAG = 1, EXIT_CONFIG_ERROR = 2 };

// Runs the command line `args` (without the program name).  Subcommands:
// params, fields, diagnostics, verify.  Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bubblescat
