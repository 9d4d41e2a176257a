#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tautrel::cli {

enum ExitCode : int {
    success = 0,
    validation_error = 2,
    nonzero_pairing = 3,
    limit_exceeded = 4,
};

// Runs one command line (without the program name). JSON goes to `out` or to --out FILE,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tautrel::cli
