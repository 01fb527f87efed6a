#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latkit {

/// Entry point of the `latkit` tool. `args` excludes the program name. Returns the exit code:
/// 0 success or true verdict, 1 false verdict or failing verification, 2 error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace latkit
