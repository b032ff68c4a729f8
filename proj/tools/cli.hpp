#ifndef ND_TOOLS_CLI_HPP
#define ND_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace nd {

// args excludes the program name. Returns the process exit status:
// 0 success, 1 error or failed verification, 2 when the bound is too small.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nd

#endif
