#pragma once

#include <iosfwd>

namespace fibdet {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitInternal = 3 };

/// Runs the fibdet command line (verbs eval, matrix, det, verify, suite).
/// All output goes to out / err; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fibdet
