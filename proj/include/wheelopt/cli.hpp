#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wheelopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

/// Entry point shared by the `wheelopt` binary and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wheelopt::cli
