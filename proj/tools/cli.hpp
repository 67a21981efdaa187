#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gct::cli {

enum ExitCode : int { ok = 0, bad_input = 2, budget_exhausted = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gct::cli
