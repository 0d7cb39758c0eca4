#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srlab::cli {

// Runs one srlab subcommand. Exit codes: 0 success, 1 precondition error,
// 2 numerical failure, 64 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srlab::cli
