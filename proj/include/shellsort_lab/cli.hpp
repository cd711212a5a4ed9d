#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shellsort_lab::cli {

enum ExitCode : int { success = 0, usage_error = 1, verification_failure = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shellsort_lab::cli
