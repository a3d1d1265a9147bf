#pragma once

#include <ostream>

namespace rstctg {

/// Entry point of the `rstctg` command-line tool. Returns 0 on success, 1 on
/// usage errors and 2 on backend or runtime failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rstctg
