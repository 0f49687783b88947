#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace montest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (args[0] is the program name) and runs one command, writing
/// JSON/CSV to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace montest::cli
