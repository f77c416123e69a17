#pragma once

#include <iosfwd>

#include "ppsum/error.hpp"

namespace ppsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNetwork = 4;

/// Maps an error kind onto the tool's exit code.
int exit_code(ErrorKind kind);

/// Runs the `ppsum` command line. Normal output goes to `out`, diagnostics to
/// `err`; the return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppsum::cli
