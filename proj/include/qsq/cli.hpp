#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerify = 3;

/// Runs `qsq <args...>` (program name excluded) writing to the given streams.
/// Subcommands: synth, verify, compare.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsq::cli
