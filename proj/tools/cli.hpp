#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bures::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kDomainError = 3,
};

/// Runs one command. args excludes the program name. Documents go to `out`
/// (or --out PATH), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bures::cli
