#pragma once

#include <iosfwd>

namespace circlet {

// Exit codes: 0 success, 1 schema or usage error, 2 obstruction (a
// machine-readable reason is printed to `out` and written to
// obstruction.json), 3 numerical guard.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circlet
