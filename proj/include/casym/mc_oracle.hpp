#pragma once

#include <cstdint>

#include "casym/core_model.hpp"
#include "casym/labeling.hpp"

namespace casym {

// Monte Carlo estimates used to cross-check the exact metrics. Decisions are
// made by comparing p_j f(y | x_j) at each sampled y.

struct SimConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    double rho = 1.0;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
};

struct EstimateWithError {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
};

EstimateWithError simulate_sep(const Constellation& c, const InputDistribution& p,
                               const SimConfig& cfg);
EstimateWithError simulate_bep(const Constellation& c, const InputDistribution& p,
                               const Labeling& lab, const SimConfig& cfg);
/// Sample mean of log f(Y|X) - log f(Y), nats.
EstimateWithError simulate_mi(const Constellation& c, const InputDistribution& p,
                              const SimConfig& cfg);
/// Sample mean of (X - E[X|Y])^2.
EstimateWithError simulate_mmse(const Constellation& c, const InputDistribution& p,
                                const SimConfig& cfg);

}  // namespace casym
