#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirops {

// Batch front-end; one subcommand per check. Exit codes:
//   0  all checks passed
//   1  invalid arguments or configuration
//   2  an asserted bound was violated
//   3  numeric non-convergence (iteration caps, tail budgets)
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dirops
