#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace h3surf {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitNumerical = 4,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; failures print a single line
///   error: kind=<usage|parse|numerical|io> exit=<code> message=<text>
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace h3surf
