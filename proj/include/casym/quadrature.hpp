#pragma once

#include <memory>
#include <span>
#include <vector>

namespace casym {

inline constexpr int kDefaultQuadratureNodes = 300;

/// Gauss-Hermite rule for the weight exp(-t^2) on the real line.
///
/// Rules are computed once per node count and shared; copies are cheap.
class QuadratureSpec {
public:
    explicit QuadratureSpec(int nodes = kDefaultQuadratureNodes);

    int nodes() const { return static_cast<int>(rule_->abscissae.size()); }
    std::span<const double> abscissae() const { return rule_->abscissae; }
    std::span<const double> weights() const { return rule_->weights; }

private:
    struct Rule {
        std::vector<double> abscissae;  // ascending
        std::vector<double> weights;
    };
    static std::shared_ptr<const Rule> rule_for(int nodes);
    static Rule compute(int nodes);

    std::shared_ptr<const Rule> rule_;
};

}  // namespace casym
