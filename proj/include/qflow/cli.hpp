#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qflow::cli {

// Stable exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kEvaluationError = 3;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qflow::cli
