#pragma once

#include <iosfwd>

namespace kup {

// Exit codes: 0 ok / relation holds, 1 invalid input, 2 mathematical
// obstruction, 3 relation violated.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kup
