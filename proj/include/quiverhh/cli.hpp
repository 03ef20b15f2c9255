#pragma once

#include <string>
#include <vector>

namespace quiverhh {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs the command line `args` (without the program name). Exit codes:
/// 0 success, 1 internal mismatch, 2 usage, parse or input error.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace quiverhh
