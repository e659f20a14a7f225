#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cournot {

// Exit codes of the cournot command.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,         // bad input, I/O failure, failed acceptance criterion
  kExitNotConverged = 2,  // simulate: orbit did not converge
  kExitUnknownModel = 3,
  kExitDegenerate = 4,    // elimination degeneracy
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cournot
