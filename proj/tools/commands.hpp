#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

namespace corruptlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (args[0] is the program name), writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "start:end:step", inclusive of `end` within 1e-12. Throws ParseError.
std::vector<double> parse_grid(std::string_view text);

}  // namespace corruptlab::cli
