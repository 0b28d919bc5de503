#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace asw::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kParse = 2,
  kUnsplit = 3,
  kInadmissible = 4,
  kInvalidCertificate = 5,
};

inline constexpr int kFormatVersion = 1;

// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asw::cli
