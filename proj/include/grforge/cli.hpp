#pragma once

#include <iosfwd>

namespace grforge {

// Exit codes: 0 when every check passes, 1 when a verified hypothesis or
// conclusion check fails, 2 for malformed input or internal errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grforge
