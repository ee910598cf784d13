#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpmr::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kUsageError = 2 };

// Runs the command line `lpmr <args...>` (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpmr::cli
