#pragma once

#include <ostream>

namespace fgp {

// Exit codes: 0 ok, 1 invalid input, 2 solver warning, 3 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fgp
