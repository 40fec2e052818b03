#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace fibcm::cli {

// Parses and dispatches one tool invocation; args excludes the program name.
// Returns the process exit status: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace fibcm::cli
