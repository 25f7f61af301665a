#pragma once

#include <iosfwd>

namespace tfm {

// Exit statuses shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,       // unreadable or malformed input, invalid flags
    kExitInfeasible = 3,  // a supplied matching is not a T-free 2-matching
    kExitBound = 4,       // oracle budget exceeded or approximation bound violated
    kExitInvalid = 5,     // a decomposition failed its certificate
};

// Parses argv (argv[0] is the program name) and runs one subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tfm
