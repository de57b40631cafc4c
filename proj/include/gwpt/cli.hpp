#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwpt {

// Exit codes of run_command
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInputError = 3;

// args excludes the program name. Reports go to out (text or JSON); usage errors to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwpt
