#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace proportia {

// Runs the command line `args` (without the program name). Exit codes: 0 for
// an answered query, 1 for usage or input errors, 2 when cap or budget struck
// before depth 1 was complete at some arity.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proportia
