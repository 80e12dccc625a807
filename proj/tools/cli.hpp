#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thz::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;  // bad flags, scenario or catalog
inline constexpr int exit_model = 2;   // two-ray null, regime or other domain error

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thz::cli
