#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace grainsight::cli {

/// Exit codes of `grainsight measure`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitNoCanvas = 2;

/// Runs the command line in-process. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grainsight::cli
