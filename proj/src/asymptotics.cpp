#include "casym/asymptotics.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "casym/exact_metrics.hpp"
#include "detail/parallel.hpp"

namespace casym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Labeling& require(const Labeling* lab) {
    if (lab == nullptr) throw std::invalid_argument("this metric needs a labeling");
    return *lab;
}

double safe_log(double v) { return v > 0.0 ? std::log(v) : -kInf; }

struct MetricName {
    LimitMetric metric;
    std::string_view name;
    std::string_view alias;
};

constexpr std::array<MetricName, 6> kNames{{
    {LimitMetric::ConditionalEntropy, "conditional_entropy", "theorem1"},
    {LimitMetric::Mmse, "mmse", "theorem2"},
    {LimitMetric::Sep, "sep", "theorem3"},
    {LimitMetric::GmiGap, "gmi_gap", "theorem4"},
    {LimitMetric::BicmMmse, "bicm_mmse", "theorem5"},
    {LimitMetric::Bep, "bep", "theorem6"},
}};

}  // namespace

double q_argument(const Constellation& c, ChannelPoint ch) { return 0.5 * ch.sqrt_rho() * med(c); }

double conditional_entropy_coefficient(const Constellation& c, const InputDistribution& p) {
    return std::numbers::pi * b_constant(c, p);
}

double mmse_coefficient(const Constellation& c, const InputDistribution& p) {
    const double d = med(c);
    return 0.25 * std::numbers::pi * d * d * b_constant(c, p);
}

double sep_coefficient(const Constellation& c, const InputDistribution& p) { return b_constant(c, p); }

double gmi_gap_coefficient(const Constellation& c, const InputDistribution& p, const Labeling& lab) {
    return std::numbers::pi * d_constant(c, p, lab);
}

double bicm_mmse_coefficient(const Constellation& c, const InputDistribution& p,
                             const Labeling& lab) {
    const double d = med(c);
    return 0.25 * std::numbers::pi * d * d * d_constant(c, p, lab);
}

double bep_coefficient(const Constellation& c, const InputDistribution& p, const Labeling& lab) {
    return d_constant(c, p, lab) / lab.bits();
}

double asym_conditional_entropy(const Constellation& c, const InputDistribution& p, ChannelPoint ch) {
    return conditional_entropy_coefficient(c, p) * q_function(q_argument(c, ch));
}

double asym_mmse(const Constellation& c, const InputDistribution& p, ChannelPoint ch) {
    return mmse_coefficient(c, p) * q_function(q_argument(c, ch));
}

double asym_sep(const Constellation& c, const InputDistribution& p, ChannelPoint ch) {
    return sep_coefficient(c, p) * q_function(q_argument(c, ch));
}

double asym_bicm_gmi_gap(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                         ChannelPoint ch) {
    return gmi_gap_coefficient(c, p, lab) * q_function(q_argument(c, ch));
}

double asym_bicm_mmse(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                      ChannelPoint ch) {
    return bicm_mmse_coefficient(c, p, lab) * q_function(q_argument(c, ch));
}

double asym_bep(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                ChannelPoint ch) {
    return bep_coefficient(c, p, lab) * q_function(q_argument(c, ch));
}

std::string_view to_string(LimitMetric metric) {
    for (const auto& n : kNames)
        if (n.metric == metric) return n.name;
    return "unknown";
}

std::optional<LimitMetric> parse_limit_metric(std::string_view name) {
    for (const auto& n : kNames)
        if (n.name == name || n.alias == name) return n.metric;
    return std::nullopt;
}

bool needs_labeling(LimitMetric metric) {
    return metric == LimitMetric::GmiGap || metric == LimitMetric::BicmMmse ||
           metric == LimitMetric::Bep;
}

double limit_coefficient(LimitMetric metric, const Constellation& c, const InputDistribution& p,
                         const Labeling* lab) {
    switch (metric) {
        case LimitMetric::ConditionalEntropy: return conditional_entropy_coefficient(c, p);
        case LimitMetric::Mmse: return mmse_coefficient(c, p);
        case LimitMetric::Sep: return sep_coefficient(c, p);
        case LimitMetric::GmiGap: return gmi_gap_coefficient(c, p, require(lab));
        case LimitMetric::BicmMmse: return bicm_mmse_coefficient(c, p, require(lab));
        case LimitMetric::Bep: return bep_coefficient(c, p, require(lab));
    }
    throw std::invalid_argument("unknown metric");
}

double log_exact_metric(LimitMetric metric, const Constellation& c, const InputDistribution& p,
                        const Labeling* lab, ChannelPoint ch, const QuadratureSpec& quad) {
    switch (metric) {
        case LimitMetric::ConditionalEntropy:
            return safe_log(conditional_entropy_exact(c, p, ch, quad));
        case LimitMetric::Mmse: return safe_log(mmse_exact(c, p, ch, quad));
        case LimitMetric::Sep: return log_sep_exact(c, p, ch);
        case LimitMetric::GmiGap: return safe_log(bicm_gmi_gap(c, p, require(lab), ch, quad));
        case LimitMetric::BicmMmse: return safe_log(bicm_mmse(c, p, require(lab), ch, quad));
        case LimitMetric::Bep: return log_bep_exact(c, p, require(lab), ch);
    }
    throw std::invalid_argument("unknown metric");
}

double log_asymptotic_metric(LimitMetric metric, const Constellation& c,
                             const InputDistribution& p, const Labeling* lab, ChannelPoint ch) {
    return std::log(limit_coefficient(metric, c, p, lab)) + log_q_function(q_argument(c, ch));
}

bool AsymptoticReport::monotone_tail(double span_db, double slack) const {
    if (rows.empty()) return false;
    const double from = rows.back().rho_db - span_db;
    double previous = kInf;
    for (const auto& row : rows) {
        if (row.rho_db < from - 1e-9) continue;
        const double dist = std::abs(row.ratio - 1.0);
        if (dist > previous + slack) return false;
        previous = dist;
    }
    return true;
}

AsymptoticReport verify_limit(LimitMetric metric, const Constellation& c,
                              const InputDistribution& p, const Labeling* lab,
                              const std::vector<double>& grid_db, const QuadratureSpec& quad,
                              const LimitOptions& options) {
    if (needs_labeling(metric)) require(lab);
    AsymptoticReport report;
    report.metric = std::string(to_string(metric));
    report.limit_constant = limit_coefficient(metric, c, p, lab);
    report.band = options.band;
    report.tail_points = options.tail_points;

    std::size_t usable = 0;
    while (usable < grid_db.size() &&
           q_argument(c, ChannelPoint::from_db(grid_db[usable])) <= options.max_q_argument)
        ++usable;

    struct Slot {
        double log_exact = 0.0, log_asym = 0.0, arg = 0.0;
    };
    std::vector<Slot> slots(usable);
    detail::parallel_for(usable, options.threads, [&](std::size_t i) {
        const auto ch = ChannelPoint::from_db(grid_db[i]);
        slots[i] = {log_exact_metric(metric, c, p, lab, ch, quad),
                    log_asymptotic_metric(metric, c, p, lab, ch), q_argument(c, ch)};
    });

    for (std::size_t i = 0; i < usable; ++i) {
        if (!std::isfinite(slots[i].log_exact)) {
            report.warnings.push_back("exact value underflows from " + std::to_string(grid_db[i]) +
                                      " dB; grid truncated");
            break;
        }
        const auto& s = slots[i];
        report.rows.push_back({grid_db[i], std::exp(s.log_exact), std::exp(s.log_asym),
                               std::exp(s.log_exact - s.log_asym), s.arg});
    }
    if (usable < grid_db.size())
        report.warnings.push_back("points beyond Q argument " + std::to_string(options.max_q_argument) +
                                  " dropped");

    const auto tail = static_cast<std::size_t>(std::max(options.tail_points, 1));
    if (report.rows.size() >= tail) {
        bool ok = true;
        double previous = kInf;
        for (std::size_t i = report.rows.size() - tail; i < report.rows.size(); ++i) {
            const double dist = std::abs(report.rows[i].ratio - 1.0);
            if (dist > options.band || dist > previous + 1e-12) ok = false;
            previous = dist;
        }
        report.converged = ok;
    }
    return report;
}

std::string to_csv(const AsymptoticReport& report) {
    nlohmann::ordered_json header;
    header["metric"] = report.metric;
    header["limit_constant"] = report.limit_constant;
    header["convergence_rule"] = {
        {"band", report.band},
        {"tail_points", report.tail_points},
        {"note", "finite-SNR band is an engineering choice; the limits hold as rho -> infinity"}};
    header["converged"] = report.converged;
    header["warnings"] = report.warnings;
    std::string out = "# " + header.dump() + "\nrho_db,exact,asymptotic,ratio\n";
    std::array<char, 32> buf{};
    const auto put = [&](double v, char sep) {
        out.append(buf.data(), std::to_chars(buf.data(), buf.data() + buf.size(), v).ptr);
        out += sep;
    };
    for (const auto& row : report.rows) {
        put(row.rho_db, ',');
        put(row.exact, ',');
        put(row.asymptotic, ',');
        put(row.ratio, '\n');
    }
    return out;
}

double rho_db_at_q_argument(const Constellation& c, double argument) {
    const double root = 2.0 * argument / med(c);
    return linear_to_db(root * root);
}

}  // namespace casym
