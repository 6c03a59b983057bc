#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace paretolab::cli {

// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace paretolab::cli
