#ifndef MORRAD_CLI_APP_HPP_
#define MORRAD_CLI_APP_HPP_

#include <ostream>

namespace morrad::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitCap = 3,
  kExitCheck = 4,
};

struct Report;

// kExitCheck when any recorded check failed, else kExitOk.
int report_exit_code(const Report& report);

// Parses argv, runs one subcommand and writes its report. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morrad::cli

#endif  // MORRAD_CLI_APP_HPP_
