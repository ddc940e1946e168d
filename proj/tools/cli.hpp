#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ipr::cli {

// Runs the ipr command line: args excludes the program name.
// Exit codes: 0 success / forced / satisfied, 1 avoidable / not satisfied /
// not found / inconclusive, 2 usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipr::cli
