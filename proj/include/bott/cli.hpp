#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bott::cli {

/// Runs one command (arguments without the program name). JSON goes to out,
/// usage messages to err. Returns 0 on success, 1 on a domain error, 2 on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bott::cli
