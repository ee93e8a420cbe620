#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loccwit::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPositive = 0, kInputError = 2, kNegative = 3 };

/// Parses `args` (without the program name) and runs one subcommand.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Writes the bundled fixture set into `dir`; returns the file names written.
std::vector<std::string> write_fixtures(const std::string& dir);

}  // namespace loccwit::cli
