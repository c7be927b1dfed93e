#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unionbounds::cli {

/// Exit codes: 0 ok, 1 input error, 2 inequality violation.
enum ExitCode : int { ok = 0, input_error = 1, violation = 2 };

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unionbounds::cli
