#pragma once

#include <optional>
#include <span>
#include <vector>

#include "casym/core_model.hpp"
#include "casym/labeling.hpp"
#include "casym/quadrature.hpp"

namespace casym {

// Exact finite-SNR metrics. Integrals over the channel output use
// Gauss-Hermite quadrature per transmitted symbol with y = sqrt(2) t + sqrt(rho) x_i;
// all mixtures are evaluated with max-exponent subtraction. Error
// probabilities use closed-form Gaussian interval probabilities.

/// E[X | Y = y].
double conditional_mean(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                        double y);

double mmse_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                  const QuadratureSpec& quad = QuadratureSpec{});

/// I(X;Y) in nats, from E[log f(Y|X) - log f(Y)].
double mi_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                const QuadratureSpec& quad = QuadratureSpec{});

/// H(X|Y) = E[-log P(X|Y)], evaluated directly so that tiny values keep full
/// relative precision.
double conditional_entropy_exact(const Constellation& c, const InputDistribution& p,
                                 ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});

/// Half-open interval [lo, hi); empty when lo >= hi.
struct Interval {
    double lo;
    double hi;
    bool empty() const { return !(lo < hi); }
};

/// MAP decision regions in the y domain (already scaled by sqrt(rho)).
struct DecisionRegions {
    std::vector<Interval> regions;
    /// True at rho = 0, where one symbol takes the whole line.
    bool degenerate = false;
};

/// Exact MAP regions at any rho >= 0, from the intersection of all pairwise
/// half-lines (every log-posterior is affine in y).
DecisionRegions decision_regions(const Constellation& c, const InputDistribution& p,
                                 ChannelPoint ch);

/// Adjacent-pair thresholds beta_1..beta_{M-1} from p_l f(b|x_l) = p_{l+1} f(b|x_{l+1}).
/// These coincide with the MAP boundaries once rho is large enough that every
/// region is non-empty.
std::vector<double> adjacent_thresholds(const Constellation& c, const InputDistribution& p,
                                        ChannelPoint ch);

/// log P(a <= Z < b) for standard normal Z.
double log_gaussian_interval(double a, double b);

/// P(Y in region j | X = x_i) as an M x M row-major matrix.
std::vector<double> transition_probabilities(const Constellation& c, const InputDistribution& p,
                                             ChannelPoint ch);

double sep_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch);
double log_sep_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch);

double bep_exact(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                 ChannelPoint ch);
double log_bep_exact(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                     ChannelPoint ch);

/// BICM-GMI as sum over k of MI minus the bit-conditioned subconstellation MIs.
double bicm_gmi(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});
double bicm_gmi(const Constellation& c, const Labeling& lab, const BitProbabilities& bp,
                ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});

/// H(X) - GMI computed without cancellation: the sum of the bit conditional
/// entropies H(Q_k|Y) plus the (zero for independent bits) gap H(X) - sum H(Q_k).
double bicm_gmi_gap(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                    ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});

/// Twice the rho-derivative of the BICM-GMI, via the MMSE-difference formula.
double bicm_mmse(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                 ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});
double bicm_mmse(const Constellation& c, const Labeling& lab, const BitProbabilities& bp,
                 ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});

/// (H - GMI) / (H - MI); nullopt when the denominator underflows.
std::optional<double> k_mi(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                           ChannelPoint ch, const QuadratureSpec& quad = QuadratureSpec{});
/// GMI-derivative over MMSE; nullopt when the MMSE underflows.
std::optional<double> k_mmse(const Constellation& c, const InputDistribution& p,
                             const Labeling& lab, ChannelPoint ch,
                             const QuadratureSpec& quad = QuadratureSpec{});

/// Bit LLR log f(y|Q_k=1) - log f(y|Q_k=0), k 1-based.
double bit_llr(const Constellation& c, const InputDistribution& p, const Labeling& lab,
               ChannelPoint ch, int k, double y);

}  // namespace casym
