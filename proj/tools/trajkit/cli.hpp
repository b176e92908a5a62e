#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace trajkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Exit codes: 0 on
/// success, 1 when input fails validation or processing, 2 on usage errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace trajkit::cli
