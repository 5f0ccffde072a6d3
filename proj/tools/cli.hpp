#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cellgroup::cli {

// Exit codes of the cellgroup tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitTimeout = 3;

// Runs the tool with `args` (program name excluded). Normal output goes to
// `out` only on success; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellgroup::cli
