#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minreach::cli {

/// Runs the command-line front end. Arguments exclude the program name.
/// Exit status: 0 feasible/success, 1 infeasible/rejected/mismatch,
/// 2 usage or input error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace minreach::cli
