#ifndef RLO_TOOLS_CLI_HPP
#define RLO_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rlo::cli {

// Exit codes: 0 success, 1 validation failure (JSON diagnostic on err),
// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlo::cli

#endif
