#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdcat {

/// Runs one sdcat command; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sdcat
