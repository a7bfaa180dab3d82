#pragma once

#include <iosfwd>

namespace lepfusion {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,          // unreadable input, unwritable output
    kExitValidation = 2,  // bad flags, mismatched sizes, out-of-range values
};

/// Runs the `fuse`, `zoom`, `decompose` and `metrics` subcommands.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lepfusion
