#pragma once

#include <string>
#include <vector>

namespace dd {

/// Run the command-line tool on argv[1..] style arguments (no program name).
/// Returns the process exit code: 0 success, 1 property violations found,
/// 2 invalid input, 3 numerical failure.
int run_cli(std::vector<std::string> args);

}  // namespace dd
