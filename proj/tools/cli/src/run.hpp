#pragma once

#include <iosfwd>

namespace pointint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Parses argv (argv[0] is the program name), runs the subcommand and writes
/// results to `out`. On failure writes one JSON line {"error", "message"} to
/// `err` and returns 2 (validation) or 3 (numerical failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pointint::cli
