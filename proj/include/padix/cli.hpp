#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padix::cli {

enum ExitCode : int {
    ok = 0,
    negative = 1,   // not solvable, incomplete set, not covered, not filiform...
    usage = 2,      // bad flags or input outside a domain
    precision = 3,  // precision exhausted or residue budget exceeded
};

/// args excludes the program name.  Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padix::cli
