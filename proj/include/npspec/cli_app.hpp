#pragma once

#include <string>
#include <vector>

namespace npspec::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsageError = 2;
inline constexpr int kExitDomainError = 3;
inline constexpr int kExitNumericalError = 4;

/// Dispatches one CLI invocation (argv without the program name).
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace npspec::cli
