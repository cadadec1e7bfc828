#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "casym/core_model.hpp"
#include "casym/labeling.hpp"

namespace testing {

inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

inline casym::Constellation ref_points() { return casym::Constellation({-4, -2, 2, 4}); }
inline casym::InputDistribution ref_probs() { return casym::InputDistribution({0.1, 0.2, 0.3, 0.4}); }

/// Random strictly increasing constellation; `snap` puts every gap on a
/// multiple of 0.5 so that MED ties are frequent.
inline casym::Constellation random_constellation(int bits, std::mt19937_64& rng, bool snap) {
    const std::size_t size = std::size_t{1} << bits;
    std::uniform_real_distribution<double> gap(0.3, 2.0);
    std::uniform_int_distribution<int> units(1, 3);
    std::vector<double> pts(size);
    double x = -1.0;
    for (auto& v : pts) {
        x += snap ? 0.5 * units(rng) : gap(rng);
        v = x;
    }
    return casym::Constellation(pts);
}

inline casym::InputDistribution random_distribution(std::size_t size, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(size);
    double total = 0.0;
    for (auto& v : p) total += (v = u(rng));
    for (auto& v : p) v /= total;
    return casym::InputDistribution(p);
}

inline casym::Labeling random_labeling(int bits, std::mt19937_64& rng) {
    std::vector<int> codes(std::size_t{1} << bits);
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<int>(i);
    std::shuffle(codes.begin(), codes.end(), rng);
    return casym::Labeling(codes);
}

}  // namespace testing
