#pragma once

#include <iosfwd>

namespace feedback {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDomainError = 2,
  kExitLimitExceeded = 3,
  kExitMismatch = 4,
};

// Subcommands: gen, solve, verify-table, kernel, play, serve.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace feedback
