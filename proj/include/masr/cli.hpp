#pragma once

#include <ostream>

namespace masr {

// Entry point of the `masr` tool. Exit codes: 0 success, 1 domain failure
// (verification, infeasible plan, collision), 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace masr
