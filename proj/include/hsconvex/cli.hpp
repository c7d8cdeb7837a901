#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsconvex {

/// Dispatches one command line (without the program name) to the checking
/// engines, prints the report on `out` and diagnostics on `err`.
/// Exit codes: 0 every verdict satisfied/holds, 1 at least one
/// violated/fails, 2 some verdict inconclusive (and none violated),
/// 64 usage error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hsconvex
