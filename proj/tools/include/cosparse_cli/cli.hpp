#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cosparse::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "COSPARSE_OUTPUT_DIR";

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalFailure = 2 };

/// Run the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosparse::cli
