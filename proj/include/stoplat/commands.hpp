// Command-line surface. Exit codes: 0 success or found, 1 self-check or
// replay mismatch, 2 invalid instance or flags, 3 not found on the grid,
// 4 precondition failed.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stoplat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotFound = 3;
inline constexpr int kExitPrecondition = 4;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stoplat::cli
