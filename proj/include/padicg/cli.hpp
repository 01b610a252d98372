#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace padicg {

/// Entry point of the command-line tool, without the program name in `args`.
/// Exit codes: 0 success, 1 a verification mismatch, 2 usage error or an
/// instance violating a hypothesis.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padicg
