#pragma once

#include <iosfwd>

namespace wb {

// Exit codes: 0 ok, 2 malformed input, 3 precondition failure,
// 4 internal-consistency failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wb
