#pragma once

// Command-line front end. run_cli() holds all logic so tests can drive it
// in-process; tools/main.cpp only forwards argv.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 runtime guard tripped (blow-up, step-size or degenerate-denominator).

#include <iosfwd>
#include <string>
#include <vector>

namespace gardner5 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitGuard = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gardner5
