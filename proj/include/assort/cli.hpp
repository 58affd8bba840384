#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace assort {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Entry point of `assort_bench`. `args` excludes the program name.
/// Subcommands: run, bench, scaling, verify, lower-bound.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace assort
