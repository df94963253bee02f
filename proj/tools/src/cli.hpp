#pragma once

#include <iosfwd>

namespace ecf::cli {

// Runs one CLI invocation. `out` receives what the binary would print on
// stdout, `err` the machine-readable error JSON; the return value is the
// process exit code (0 ok, 1 usage, 2 data error, 3 numeric degeneracy).
// Kept separate from main() so tests can drive the CLI in process.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace ecf::cli
