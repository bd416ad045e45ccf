#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sharp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one command line (arguments without the program name). The report
/// goes to `out` unless --output names a file; usage errors and the JSON
/// error object for exit code 2 go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sharp::cli
