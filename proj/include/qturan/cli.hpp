#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qturan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 64;    // EX_USAGE
inline constexpr int kExitSoftware = 70; // EX_SOFTWARE: internal consistency failure
inline constexpr int kExitIo = 74;       // EX_IOERR

/// Runs the scanner with argv-style arguments (args[0] is the program name).
/// CSV goes to --out or, without it, to `out`; the summary goes to `err`.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace qturan::cli
