#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation failed, resource limit, bad argument
inline constexpr int kExitParse = 2;
inline constexpr int kExitDisconnected = 3;
inline constexpr int kExitOverflow = 4;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twdist::cli
