#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coarse::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kPrecondition = 2,
    kCertificateViolation = 3,
};

// Runs one command; `args` excludes the program name. The report bundle goes
// to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli
