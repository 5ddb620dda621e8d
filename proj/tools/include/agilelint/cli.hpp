#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agilelint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPolicy = 1;
inline constexpr int kExitInput = 2;

inline constexpr const char* kConfigEnv = "AGILELINT_CONFIG";

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agilelint::cli
