#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace streampart::cli {

// Exit codes: 0 ok, 1 I/O or malformed input, 2 bad flags, 3 infeasible
// configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace streampart::cli
