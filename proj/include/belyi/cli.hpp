#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace belyi::cli {

// Runs one command line (without the program name). Exit codes: 0 success,
// 2 invalid input or unmet hypothesis, 1 internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace belyi::cli
