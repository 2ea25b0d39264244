#ifndef ODEKIT_CLI_HPP
#define ODEKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace odekit {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitAnalysis = 1, kExitUsage = 2 };

/// Runs the tool on args (without the program name). Results go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace odekit

#endif
