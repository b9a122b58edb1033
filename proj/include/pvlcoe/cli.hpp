#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pvlcoe::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_evaluation = 3;

/// Run one command-line invocation. `args` excludes the program name.
/// Writes results to `out` and diagnostics to `err`; returns the process
/// exit status (0 ok, 2 usage error, 3 evaluation error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvlcoe::cli
