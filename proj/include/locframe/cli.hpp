#pragma once

#include <iosfwd>

namespace locframe::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kDiverged = 3;

/// Entry point of the `locframe` command line tool. Reports go to the output
/// directory; errors are written to `err` (and error.json) as JSON.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace locframe::cli
