#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace spotplan {

/// Exit statuses shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInfeasible = 2 };

/// Environment variable naming the default catalog file.
inline constexpr const char* kCatalogEnvVar = "SPOTPLAN_CATALOG";

/// Runs `spotplan <subcommand> [options]`. `args` excludes the program name.
/// Reports go to `out` (or the --out file), diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace spotplan
