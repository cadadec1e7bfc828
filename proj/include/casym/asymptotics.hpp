#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casym/core_model.hpp"
#include "casym/labeling.hpp"
#include "casym/quadrature.hpp"

namespace casym {

// High-SNR asymptotes. Every metric below behaves as (constant) * Q(sqrt(rho) d / 2);
// the log_* variants return log of the asymptote and stay finite where Q underflows.

/// Argument sqrt(rho) d / 2 of the common Q-function.
double q_argument(const Constellation& c, ChannelPoint ch);

double conditional_entropy_coefficient(const Constellation& c, const InputDistribution& p);
double mmse_coefficient(const Constellation& c, const InputDistribution& p);
double sep_coefficient(const Constellation& c, const InputDistribution& p);
double gmi_gap_coefficient(const Constellation& c, const InputDistribution& p, const Labeling& lab);
double bicm_mmse_coefficient(const Constellation& c, const InputDistribution& p,
                             const Labeling& lab);
double bep_coefficient(const Constellation& c, const InputDistribution& p, const Labeling& lab);

double asym_conditional_entropy(const Constellation& c, const InputDistribution& p, ChannelPoint ch);
double asym_mmse(const Constellation& c, const InputDistribution& p, ChannelPoint ch);
double asym_sep(const Constellation& c, const InputDistribution& p, ChannelPoint ch);
double asym_bicm_gmi_gap(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                         ChannelPoint ch);
double asym_bicm_mmse(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                      ChannelPoint ch);
double asym_bep(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                ChannelPoint ch);

/// The six limit statements: H(X|Y), MMSE, SEP and their BICM counterparts.
enum class LimitMetric { ConditionalEntropy, Mmse, Sep, GmiGap, BicmMmse, Bep };

std::string_view to_string(LimitMetric metric);
std::optional<LimitMetric> parse_limit_metric(std::string_view name);
bool needs_labeling(LimitMetric metric);

double limit_coefficient(LimitMetric metric, const Constellation& c, const InputDistribution& p,
                         const Labeling* lab);
/// log of the exact metric (quadrature or closed form); -inf when it underflows.
double log_exact_metric(LimitMetric metric, const Constellation& c, const InputDistribution& p,
                        const Labeling* lab, ChannelPoint ch, const QuadratureSpec& quad);
double log_asymptotic_metric(LimitMetric metric, const Constellation& c,
                             const InputDistribution& p, const Labeling* lab, ChannelPoint ch);

struct LimitOptions {
    /// Convergence band half-width around ratio 1.
    double band = 0.08;
    /// Number of trailing grid points that must be inside the band and approach 1.
    int tail_points = 3;
    /// Points whose Q argument exceeds this are dropped (beyond log-domain reach
    /// of Q(sqrt(rho) d/2) >= 1e-300).
    double max_q_argument = 37.0;
    unsigned threads = 0;
};

struct AsymptoticRow {
    double rho_db;
    double exact;        // linear, may be 0 after underflow
    double asymptotic;   // linear, may be 0 after underflow
    double ratio;        // exp(log exact - log asymptotic)
    double q_argument;
};

struct AsymptoticReport {
    std::string metric;
    double limit_constant = 0.0;
    double band = 0.08;
    int tail_points = 3;
    std::vector<AsymptoticRow> rows;
    bool converged = false;
    std::vector<std::string> warnings;

    /// ratio(last) - 1 does not grow over trailing rows spanning `span_db` dB.
    bool monotone_tail(double span_db, double slack = 1e-12) const;
};

/// Tabulates exact/asymptotic ratios over an SNR grid (dB).
AsymptoticReport verify_limit(LimitMetric metric, const Constellation& c,
                              const InputDistribution& p, const Labeling* lab,
                              const std::vector<double>& grid_db,
                              const QuadratureSpec& quad = QuadratureSpec{},
                              const LimitOptions& options = {});

/// CSV with columns rho_db,exact,asymptotic,ratio after a `#`-prefixed JSON
/// header holding the limit constant, convergence rule and verdict.
std::string to_csv(const AsymptoticReport& report);

/// rho in dB at which sqrt(rho) d / 2 equals `argument`.
double rho_db_at_q_argument(const Constellation& c, double argument);

}  // namespace casym
