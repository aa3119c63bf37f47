#pragma once

#include <ostream>

namespace fbmsig::cli {

/// Parses arguments, runs one subcommand and writes its report to `out`
/// (or the --output file). Diagnostics go to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fbmsig::cli
