#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padicq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInvariant = 2;

/// Runs one invocation; `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicq::cli
