#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haptibench {

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitAnalysisFailure = 2;

/// Runs one `haptibench` command line. `args` excludes the program name.
/// Machine-readable results go to files (and to `out` with --stdout);
/// progress and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace haptibench
