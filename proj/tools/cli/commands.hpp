#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace detsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolated = 2;

/// Runs one subcommand. `args` excludes the program name. The RunReport goes
/// to `out`; help text and usage diagnostics go to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace detsum::cli
