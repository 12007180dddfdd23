#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vdf {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name. Results and structured
/// errors are written to out as a single JSON document; help text goes to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vdf
