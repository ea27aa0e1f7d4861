#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmp {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,      // bad flags, unreadable or malformed input, rejected parameters
  kExitSizeCap = 2,    // input above the brute-force cap without --heuristic
  kExitInvariant = 3,  // a guaranteed property failed on an exact run
};

// Runs one subcommand: match, counterexample, classify, lemmas, experiment
// or svg. `args` excludes the program name; "-" as input reads `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mmp
