#pragma once

#include <iosfwd>

namespace olac {

/// Exit codes: 0 success, 1 domain failure, 2 usage or environment failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace olac
