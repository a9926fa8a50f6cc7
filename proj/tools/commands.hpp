// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with in-memory streams.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypb::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDomainError = 3,
    kSingularSaturation = 4,
};

/// Runs one invocation. `args` excludes the program name. Output files go
/// to --out when given and to `out` otherwise; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypb::cli
