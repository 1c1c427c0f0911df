#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metalg::cli {

/// Exit codes: 0 success / property holds, 1 property fails or refuted, 2 input error.
enum ExitCode : int { kOk = 0, kFails = 1, kInputError = 2 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metalg::cli
