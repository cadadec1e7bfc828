#pragma once

#include <ostream>
#include <string_view>

namespace casym::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kIoError = 3 };

/// Entry point of the `casym` tool. Artifacts go to `out` (or the --out file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casym::cli
