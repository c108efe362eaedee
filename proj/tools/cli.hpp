#pragma once

#include <ostream>

namespace vereval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCoverage = 3;
inline constexpr int kExitTool = 4;

/// Entry point of the `vereval` command. Subcommands: corpus, eval, report,
/// validate, fixture. Never throws; every error maps to an exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vereval::cli
