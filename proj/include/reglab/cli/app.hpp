#pragma once

#include <iosfwd>

namespace reglab::cli {

/// Entry point of the `reglab` tool. JSON goes to `out`, diagnostics to `err`.
/// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 resource limit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reglab::cli
