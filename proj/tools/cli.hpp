#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stein::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kSamplerError = 3,
  kSingular = 4,
};

/// Runs one stein-sphere invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stein::cli
