#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mhdq {

/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config error.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_usage = 2 };

/// Runs one subcommand. `args` excludes the program name.
///
///   verify-structure [--samples N] [--seed S] [--output-dir D]
///   check-compat <config>
///   extend <snapshot-in> <snapshot-out>
///   run <config> [--serial-reductions]
///   compare-reflection <config> [--serial-reductions]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mhdq
