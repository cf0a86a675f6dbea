#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ellkzb {

// Exit codes: 0 success/verified, 1 verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellkzb
