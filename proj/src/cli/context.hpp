#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "casym/core_model.hpp"
#include "casym/labeling.hpp"
#include "cli/table.hpp"

namespace casym::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Constellation, distribution and labeling after all flags are applied.
struct Setup {
    Constellation constellation;
    InputDistribution distribution;
    Labeling labeling;
    std::string labeling_name;
    bool normalized = true;

    ordered_json describe() const;
};

struct RunOptions {
    int nodes = 300;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1'000'000;
    unsigned threads = 0;
};

}  // namespace casym::cli
