#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpw::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kPropertyFailure = 2,
  kSingular = 3,
};

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpw::cli
