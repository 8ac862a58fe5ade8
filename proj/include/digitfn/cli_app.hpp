#ifndef DIGITFN_CLI_APP_HPP
#define DIGITFN_CLI_APP_HPP

#include <ostream>
#include <string>
#include <vector>

namespace digitfn::cli {

// Runs the command line tool on the given arguments (without argv[0]).
// Returns the process exit code: 0 on success, 1 when `verify` found
// failures, 2 on any validation/domain/guard error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace digitfn::cli

#endif
