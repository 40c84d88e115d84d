#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nerve {

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitInputError = 2,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nerve
