#include "casym/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace casym {

QuadratureSpec::QuadratureSpec(int nodes) : rule_(rule_for(nodes)) {}

std::shared_ptr<const QuadratureSpec::Rule> QuadratureSpec::rule_for(int nodes) {
    if (nodes < 2 || nodes > 4000)
        throw std::invalid_argument("Gauss-Hermite node count must be in [2, 4000], got " +
                                    std::to_string(nodes));
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const Rule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[nodes];
    if (!slot) slot = std::make_shared<const Rule>(compute(nodes));
    return slot;
}

// Eigenvalues of the symmetric Jacobi matrix give the nodes; each is then
// polished by Newton on the orthonormal recurrence, which also yields the weight.
QuadratureSpec::Rule QuadratureSpec::compute(int n) {
    constexpr double kPiM4 = 0.7511255444649425;  // pi^(-1/4)
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Gauss-Hermite eigenvalue solve failed");

    Rule rule;
    rule.abscissae.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double z = solver.eigenvalues()[i];
        double pp = 0.0, log_scale = 0.0;
        for (int iter = 0; iter < 8; ++iter) {
            // the recurrence is rescaled to stay finite for large node counts
            double p1 = kPiM4, p2 = 0.0;
            log_scale = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
                if (std::abs(p1) > 1e150) {
                    p1 *= 1e-150;
                    p2 *= 1e-150;
                    log_scale += 150.0 * std::numbers::ln10;
                }
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double step = p1 / pp;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.abscissae[static_cast<std::size_t>(i)] = z;
        rule.weights[static_cast<std::size_t>(i)] =
            std::exp(std::numbers::ln2 - 2.0 * (std::log(std::abs(pp)) + log_scale));
    }
    // exact symmetry
    for (int i = 0; i < n / 2; ++i) {
        const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
        const double x = 0.5 * (rule.abscissae[hi] - rule.abscissae[lo]);
        const double w = 0.5 * (rule.weights[hi] + rule.weights[lo]);
        rule.abscissae[lo] = -x;
        rule.abscissae[hi] = x;
        rule.weights[lo] = rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.abscissae[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

}  // namespace casym
