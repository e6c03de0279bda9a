#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctess::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2, kTestFailure = 3 };

/// Entry point of the clustertess command line; args[0] is the program
/// name. Records and summaries named "-" go to `out`, diagnostics to `err`,
/// and "--input -" reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace ctess::cli
