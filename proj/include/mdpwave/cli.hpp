#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mdpwave {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kFail = 1, kInvalidInput = 2, kInternalError = 3 };

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdpwave
