#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smoothset {

/// Runs one command line (without the program name). Reports go to `out`, diagnostics
/// to `err`. Returns 0 on success, 1 when a computed verdict is negative (with a
/// witness in the report) and 2 on bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smoothset
