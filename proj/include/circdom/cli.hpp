#pragma once

namespace circdom::cli {

// Parses argv, dispatches the subcommand, writes artifacts. Returns the
// process exit code: 0 success, 2 validation error, 3 numerical failure,
// 64 usage error, 74 file I/O failure. Structured error names go to
// standard error.
int run(int argc, const char* const* argv);

}  // namespace circdom::cli
