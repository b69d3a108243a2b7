#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperkan {

/// Exit codes returned by run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime/data error
inline constexpr int kExitUsage = 2;    // bad flags or subcommand

/// Runs one CLI invocation. `args` excludes the program name. Subcommands:
/// features, train, bench, ablate, timeit, synth.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperkan
