#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace monge4 {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,      // a requested predicate or identity check failed
    kExitUsage = 2,       // bad flags, expressions or patch documents
    kExitEvaluation = 3,  // domain errors and internal inconsistencies
    kExitIo = 4,
};

/// Runs the tool on `args` (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monge4
