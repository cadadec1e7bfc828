#pragma once

#include <string>
#include <vector>

#include "cli/context.hpp"

namespace casym::cli {

std::vector<std::string> suite_names();

/// Runs a named suite ("all" runs every suite). Rows: suite, check, value,
/// target, status. `passed` is false if any check failed.
Table run_suite(const std::string& suite, const Setup& setup, const RunOptions& options,
                bool& passed);

}  // namespace casym::cli
