#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hv {

/// Subcommands: run, fit, sweep, recurrence. Returns the process exit code.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hv
