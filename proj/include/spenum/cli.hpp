// Command-line front end. `run` takes the arguments after the program name
// and writes results to `out`, diagnostics to `err`.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spenum::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kVerifyFailed = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spenum::cli
