#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etiquette::cli {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace etiquette::cli
