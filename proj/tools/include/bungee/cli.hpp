#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bungee::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,       // bad flags, unparsable expressions or values, invalid config
  kRuntime = 2,     // I/O failure, nothing evaluable
  kViolations = 3,  // verify measured violation_rate > 0; examples run had a failing expectation
};

/// Runs one invocation. args excludes the program name. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bungee::cli
