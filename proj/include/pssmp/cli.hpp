#pragma once

#include <iosfwd>

namespace pssmp {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitPass = 0, kExitVerifyFail = 1, kExitUsage = 2, kExitRuntime = 3 };

// Entry point of the pssmp tool; output goes to out unless --out is given.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pssmp
