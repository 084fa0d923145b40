#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsym::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// Runs the command line (args excludes the program name). Reports go to `out` unless an
// output path is given; diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count for independent suites, from QSYM_THREADS (default 1).
unsigned thread_count();

}  // namespace qsym::cli
