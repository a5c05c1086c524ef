#pragma once

#include <ostream>

namespace ptcavity::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalError = 3 };

/// Entry point of `ptcavity`. Output directory precedence: --out, then the
/// PTCAVITY_OUT_DIR environment variable, then the config file, then "out".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptcavity::cli
