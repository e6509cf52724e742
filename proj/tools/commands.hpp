#pragma once

#include <ostream>

namespace miembed::cli {

/// Parses argv and runs one subcommand. Returns the process exit code; on
/// failure writes a single "error: ..." line to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace miembed::cli
