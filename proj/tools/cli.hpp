#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kelvin_eit::cli {

/// Exit codes: 0 success, 1 non-convergence or failed check, 2 usage error.
enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Decimal with 17 significant digits; empty for NaN.
std::string format_real(double value);

}  // namespace kelvin_eit::cli
