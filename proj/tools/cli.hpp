#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace permclass::cli {

enum ExitCode { kSuccess = 0, kFailure = 1, kUsage = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace permclass::cli
