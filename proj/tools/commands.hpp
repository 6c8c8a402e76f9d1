// commands.hpp — command-line entry point, reusable in-process for tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entprod::cli {

// Parses and dispatches one invocation. Data goes to `out`, diagnostics to
// `err`. Exit codes: 0 success, 2 validation failure, 3 numeric/domain
// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace entprod::cli
