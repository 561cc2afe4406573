#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pellforms {

/// Exit status of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitDomainError = 1, kExitUsage = 2 };

/// Runs the CLI on args (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pellforms
