#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hidden::cli {

// Exit codes: 0 success / verdict accepted; 2 verdict rejected or
// integrity failure; 1 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hidden::cli
