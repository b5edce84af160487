#pragma once

#include <iosfwd>

namespace nilgrade {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Subcommands construct, verify, classify, isomorphic, nonexist and
/// acceptance. JSON goes to `out`, usage text to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nilgrade
