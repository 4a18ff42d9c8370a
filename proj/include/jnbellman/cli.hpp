#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jnb::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kIoError = 3;

/// Runs the command line `argv` (argv[0] is the program name).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names accepted by `verify --suite`, in output order.
std::vector<std::string> suite_names();

}  // namespace jnb::cli
