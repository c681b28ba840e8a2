#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gkz::cli {

// Runs one command; args excludes the program name. Returns the exit code:
// 0 on success, 1 on domain errors, 2 on flag errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gkz::cli
