#pragma once

// Command-line driver. Exit status: 0 success, 1 counterexample, 2 invalid configuration.

#include <ostream>
#include <string>
#include <vector>

namespace kks {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitInvalid = 2;

inline constexpr int kMaxCliRank = 8;
inline constexpr int kMaxCliSize = 12;

/// Runs the tool on the arguments that follow the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kks
