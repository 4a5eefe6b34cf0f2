#pragma once

#include <string>
#include <vector>

namespace fermichain::cli {

enum ExitCode { ok = 0, invalid = 1, no_convergence = 2 };

/// Runs one command line (without the program name). Tables go to --output or
/// stdout, diagnostics to stderr.
int run(const std::vector<std::string>& args);

}  // namespace fermichain::cli
