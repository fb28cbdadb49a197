#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lqdg::cli {

/// Runs the command line given by args (without the program name),
/// writing reports to out and diagnostics to err. Returns the process
/// exit code: 0 success, 1 solver failure, 2 config or usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lqdg::cli
