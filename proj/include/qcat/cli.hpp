#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcat {

/// Runs one CLI command. Exit codes: 0 success / all checks pass,
/// 1 counterexample or failed check (with witness in the report),
/// 2 input error (parse failure, bad reference, bad flags).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcat
