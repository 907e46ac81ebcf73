#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ringdelay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidArguments = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Runs the command line (without the program name).  Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringdelay::cli
