#pragma once

#include <iosfwd>

namespace gapfill::cli {

/// Exit codes: 0 success, 1 malformed input or inconsistent flags,
/// 2 weights file does not match the instance grid.
enum ExitCode : int { ok = 0, bad_input = 1, grid_mismatch = 2 };

/// Parses argv and runs one subcommand. The one-line summary goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gapfill::cli
