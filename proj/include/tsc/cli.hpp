#pragma once

#include <iosfwd>
#include <string_view>

namespace tsc {

/// Exit codes of the analyzer.
enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,         // script syntax or command-line usage
    kExitName = 3,          // unknown scale, function or claim
    kExitPrecondition = 4,  // a library precondition failed
    kExitAudit = 5,         // an audit verdict differs from its expectation
};

/// Scales and functions available without --input, and as fallbacks with it.
std::string_view builtin_script();

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsc
