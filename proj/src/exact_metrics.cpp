#include "casym/exact_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace casym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A discrete input that need not satisfy the Constellation invariants
// (subconstellations may have a single point).
struct InputView {
    std::vector<double> points;
    std::vector<double> probs;
};

InputView full_view(const Constellation& c, const InputDistribution& p) {
    if (c.size() != p.size()) throw std::invalid_argument("constellation and distribution sizes differ");
    return {{c.points().begin(), c.points().end()}, {p.probs().begin(), p.probs().end()}};
}

InputView sub_view(const Constellation& c, const InputDistribution& p, const Labeling& lab, int k,
                   int b) {
    const double mass = bit_marginal(p, lab, k, b);
    InputView v;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (bit_of(lab, i, k) == b) {
            v.points.push_back(c[i]);
            v.probs.push_back(p[i] / mass);
        }
    return v;
}

void require_lab(const Constellation& c, const InputDistribution& p, const Labeling& lab) {
    if (c.size() != p.size() || c.size() != lab.size())
        throw std::invalid_argument("constellation, distribution and labeling sizes differ");
}

// sum_i p_i * (1/sqrt(pi)) sum_n w_n g(i, t_n, r), where r_j is the
// log-posterior ratio log[P(x_j|y) / P(x_i|y)] at y = sqrt(2) t_n + sqrt(rho) x_i.
template <class Integrand>
double integrate(const InputView& in, double rho, const QuadratureSpec& quad, Integrand&& g) {
    const std::size_t size = in.points.size();
    const double root2rho = std::sqrt(2.0 * rho);
    const auto t = quad.abscissae();
    const auto w = quad.weights();
    std::vector<double> logp(size), r(size);
    for (std::size_t j = 0; j < size; ++j) logp[j] = std::log(in.probs[j]);

    double total = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        double acc = 0.0;
        for (std::size_t n = 0; n < t.size(); ++n) {
            for (std::size_t j = 0; j < size; ++j) {
                const double delta = in.points[i] - in.points[j];
                r[j] = (logp[j] - logp[i]) - root2rho * t[n] * delta - 0.5 * rho * delta * delta;
            }
            r[i] = 0.0;
            acc += w[n] * g(i, t[n], std::span<const double>(r));
        }
        total += in.probs[i] * acc;
    }
    return total / std::sqrt(std::numbers::pi);
}

// -log P(x_i | y) = log sum_j exp(r_j) with r_i = 0; the j != i terms are
// summed apart from the unit term so that tiny posteriors keep their precision.
double surprisal(std::size_t i, std::span<const double> r) {
    double top = -kInf;
    for (std::size_t j = 0; j < r.size(); ++j)
        if (j != i) top = std::max(top, r[j]);
    if (top <= 0.0) {
        double s = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (j != i) s += std::exp(r[j]);
        return std::log1p(s);
    }
    double s = std::exp(-top);
    for (std::size_t j = 0; j < r.size(); ++j)
        if (j != i) s += std::exp(r[j] - top);
    return top + std::log(s);
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double cond_entropy_view(const InputView& in, double rho, const QuadratureSpec& quad) {
    if (in.points.size() == 1) return 0.0;
    return integrate(in, rho, quad,
                     [](std::size_t i, double, std::span<const double> r) { return surprisal(i, r); });
}

double mi_view(const InputView& in, double rho, const QuadratureSpec& quad) {
    if (in.points.size() == 1) return 0.0;
    const std::size_t size = in.points.size();
    const double sqrt_rho = std::sqrt(rho);
    std::vector<double> logp(size), a(size);
    for (std::size_t j = 0; j < size; ++j) logp[j] = std::log(in.probs[j]);
    // Written in the output domain: log f(y|x_i) - log sum_j p_j f(y|x_j).
    return integrate(in, rho, quad, [&](std::size_t i, double t, std::span<const double>) {
        const double y = std::numbers::sqrt2 * t + sqrt_rho * in.points[i];
        for (std::size_t j = 0; j < size; ++j) {
            const double u = y - sqrt_rho * in.points[j];
            a[j] = logp[j] - 0.5 * u * u;
        }
        return -t * t - log_sum_exp(a);
    });
}

double mmse_view(const InputView& in, double rho, const QuadratureSpec& quad) {
    if (in.points.size() == 1) return 0.0;
    const std::size_t size = in.points.size();
    return integrate(in, rho, quad, [&](std::size_t i, double, std::span<const double> r) {
        double top = 0.0;
        for (double v : r) top = std::max(top, v);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < size; ++j) {
            const double wj = std::exp(r[j] - top);
            num += wj * (in.points[i] - in.points[j]);
            den += wj;
        }
        const double err = num / den;
        return err * err;
    });
}

// H(Q_k | Y) for the full input, evaluated as E[-log P(Q_k = q_k(X) | Y)].
double bit_cond_entropy(const InputView& in, const Labeling& lab, int k, double rho,
                        const QuadratureSpec& quad) {
    const std::size_t size = in.points.size();
    std::vector<int> bit(size);
    for (std::size_t j = 0; j < size; ++j) bit[j] = bit_of(lab, j, k);
    std::vector<double> same, other;
    same.reserve(size);
    other.reserve(size);
    return integrate(in, rho, quad, [&](std::size_t i, double, std::span<const double> r) {
        same.clear();
        other.clear();
        for (std::size_t j = 0; j < size; ++j) (bit[j] == bit[i] ? same : other).push_back(r[j]);
        // same contains r_i = 0, so its log-sum-exp is finite
        return softplus(log_sum_exp(other) - log_sum_exp(same));
    });
}

double binary_entropy(double q) { return -(q * std::log(q) + (1.0 - q) * std::log1p(-q)); }

// Threshold between symbols u < v: above it v has the larger posterior.
double pair_threshold(double xu, double xv, double pu, double pv, double sqrt_rho) {
    return std::log(pu / pv) / (sqrt_rho * (xv - xu)) + 0.5 * sqrt_rho * (xu + xv);
}

}  // namespace

double conditional_mean(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                        double y) {
    const auto in = full_view(c, p);
    const double sqrt_rho = ch.sqrt_rho();
    std::vector<double> e(in.points.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        const double u = y - sqrt_rho * in.points[j];
        e[j] = std::log(in.probs[j]) - 0.5 * u * u;
    }
    const double top = *std::max_element(e.begin(), e.end());
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
        const double wj = std::exp(e[j] - top);
        num += wj * in.points[j];
        den += wj;
    }
    return num / den;
}

double mmse_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                  const QuadratureSpec& quad) {
    return mmse_view(full_view(c, p), ch.rho(), quad);
}

double mi_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch,
                const QuadratureSpec& quad) {
    return std::max(0.0, mi_view(full_view(c, p), ch.rho(), quad));
}

double conditional_entropy_exact(const Constellation& c, const InputDistribution& p,
                                 ChannelPoint ch, const QuadratureSpec& quad) {
    return cond_entropy_view(full_view(c, p), ch.rho(), quad);
}

DecisionRegions decision_regions(const Constellation& c, const InputDistribution& p,
                                 ChannelPoint ch) {
    if (c.size() != p.size()) throw std::invalid_argument("constellation and distribution sizes differ");
    const std::size_t size = c.size();
    DecisionRegions out;
    out.regions.assign(size, Interval{kInf, kInf});
    if (ch.rho() == 0.0) {
        // Prior-only decision; ties go to the lower index.
        const auto best = static_cast<std::size_t>(
            std::max_element(p.probs().begin(), p.probs().end()) - p.probs().begin());
        out.regions[best] = Interval{-kInf, kInf};
        out.degenerate = true;
        return out;
    }
    const double sqrt_rho = ch.sqrt_rho();
    for (std::size_t i = 0; i < size; ++i) {
        double lo = -kInf, hi = kInf;
        for (std::size_t j = 0; j < i; ++j) lo = std::max(lo, pair_threshold(c[j], c[i], p[j], p[i], sqrt_rho));
        for (std::size_t j = i + 1; j < size; ++j)
            hi = std::min(hi, pair_threshold(c[i], c[j], p[i], p[j], sqrt_rho));
        out.regions[i] = lo < hi ? Interval{lo, hi} : Interval{hi, hi};
    }
    return out;
}

std::vector<double> adjacent_thresholds(const Constellation& c, const InputDistribution& p,
                                        ChannelPoint ch) {
    if (!(ch.rho() > 0.0)) throw std::domain_error("thresholds require rho > 0");
    std::vector<double> beta;
    for (std::size_t l = 0; l + 1 < c.size(); ++l)
        beta.push_back(pair_threshold(c[l], c[l + 1], p[l], p[l + 1], ch.sqrt_rho()));
    return beta;
}

double log_gaussian_interval(double a, double b) {
    if (!(a < b)) return -kInf;
    if (a >= 0.0) {
        const double la = log_q_function(a);
        return la + log1m_exp(log_q_function(b) - la);
    }
    if (b <= 0.0) {
        const double lb = log_q_function(-b);
        return lb + log1m_exp(log_q_function(-a) - lb);
    }
    return std::log1p(-(q_function(-a) + q_function(b)));
}

std::vector<double> transition_probabilities(const Constellation& c, const InputDistribution& p,
                                             ChannelPoint ch) {
    const auto dr = decision_regions(c, p, ch);
    const std::size_t size = c.size();
    const double sqrt_rho = ch.sqrt_rho();
    std::vector<double> t(size * size, 0.0);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto& reg = dr.regions[j];
            if (reg.empty()) continue;
            const double mu = sqrt_rho * c[i];
            t[i * size + j] = std::exp(log_gaussian_interval(reg.lo - mu, reg.hi - mu));
        }
    return t;
}

double sep_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch) {
    const auto dr = decision_regions(c, p, ch);
    const double sqrt_rho = ch.sqrt_rho();
    double sep = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& reg = dr.regions[i];
        const double mu = sqrt_rho * c[i];
        sep += p[i] * (reg.empty() ? 1.0 : q_function(mu - reg.lo) + q_function(reg.hi - mu));
    }
    return sep;
}

double log_sep_exact(const Constellation& c, const InputDistribution& p, ChannelPoint ch) {
    const auto dr = decision_regions(c, p, ch);
    const double sqrt_rho = ch.sqrt_rho();
    std::vector<double> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& reg = dr.regions[i];
        const double lp = std::log(p[i]);
        if (reg.empty()) {
            terms.push_back(lp);
            continue;
        }
        const double mu = sqrt_rho * c[i];
        terms.push_back(lp + log_q_function(mu - reg.lo));
        terms.push_back(lp + log_q_function(reg.hi - mu));
    }
    return log_sum_exp(terms);
}

double log_bep_exact(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                     ChannelPoint ch) {
    require_lab(c, p, lab);
    const auto dr = decision_regions(c, p, ch);
    const double sqrt_rho = ch.sqrt_rho();
    std::vector<double> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double mu = sqrt_rho * c[i];
        for (std::size_t j = 0; j < c.size(); ++j) {
            const int flips = std::popcount(static_cast<unsigned>(lab[i] ^ lab[j]));
            if (flips == 0 || dr.regions[j].empty()) continue;
            terms.push_back(std::log(p[i]) + std::log(static_cast<double>(flips)) +
                            log_gaussian_interval(dr.regions[j].lo - mu, dr.regions[j].hi - mu));
        }
    }
    return log_sum_exp(terms) - std::log(static_cast<double>(lab.bits()));
}

double bep_exact(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                 ChannelPoint ch) {
    require_lab(c, p, lab);
    const auto t = transition_probabilities(c, p, ch);
    const std::size_t size = c.size();
    double bep = 0.0;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            bep += p[i] * t[i * size + j] * std::popcount(static_cast<unsigned>(lab[i] ^ lab[j]));
    return bep / lab.bits();
}

double bicm_gmi(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                ChannelPoint ch, const QuadratureSpec& quad) {
    require_lab(c, p, lab);
    const double full = mi_view(full_view(c, p), ch.rho(), quad);
    double gmi = 0.0;
    for (int k = 1; k <= lab.bits(); ++k) {
        double cond = 0.0;
        for (int b = 0; b <= 1; ++b)
            cond += bit_marginal(p, lab, k, b) * mi_view(sub_view(c, p, lab, k, b), ch.rho(), quad);
        gmi += full - cond;
    }
    return std::max(0.0, gmi);
}

double bicm_gmi(const Constellation& c, const Labeling& lab, const BitProbabilities& bp,
                ChannelPoint ch, const QuadratureSpec& quad) {
    return bicm_gmi(c, induced_distribution(lab, bp), lab, ch, quad);
}

double bicm_gmi_gap(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                    ChannelPoint ch, const QuadratureSpec& quad) {
    require_lab(c, p, lab);
    const auto in = full_view(c, p);
    double dependence = entropy(p);
    double gap = 0.0;
    for (int k = 1; k <= lab.bits(); ++k) {
        dependence -= binary_entropy(bit_marginal(p, lab, k, 0));
        gap += bit_cond_entropy(in, lab, k, ch.rho(), quad);
    }
    // dependence is zero up to rounding when p is induced by independent bits
    if (std::abs(dependence) > 1e-13) gap += dependence;
    return gap;
}

double bicm_mmse(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                 ChannelPoint ch, const QuadratureSpec& quad) {
    require_lab(c, p, lab);
    const double full = mmse_view(full_view(c, p), ch.rho(), quad);
    double total = 0.0;
    for (int k = 1; k <= lab.bits(); ++k) {
        double cond = 0.0;
        for (int b = 0; b <= 1; ++b)
            cond += bit_marginal(p, lab, k, b) * mmse_view(sub_view(c, p, lab, k, b), ch.rho(), quad);
        total += full - cond;
    }
    return total;
}

double bicm_mmse(const Constellation& c, const Labeling& lab, const BitProbabilities& bp,
                 ChannelPoint ch, const QuadratureSpec& quad) {
    return bicm_mmse(c, induced_distribution(lab, bp), lab, ch, quad);
}

std::optional<double> k_mi(const Constellation& c, const InputDistribution& p, const Labeling& lab,
                           ChannelPoint ch, const QuadratureSpec& quad) {
    const double den = conditional_entropy_exact(c, p, ch, quad);
    if (!(den >= std::numeric_limits<double>::min())) return std::nullopt;
    return bicm_gmi_gap(c, p, lab, ch, quad) / den;
}

std::optional<double> k_mmse(const Constellation& c, const InputDistribution& p,
                             const Labeling& lab, ChannelPoint ch, const QuadratureSpec& quad) {
    const double den = mmse_exact(c, p, ch, quad);
    if (!(den >= std::numeric_limits<double>::min())) return std::nullopt;
    return bicm_mmse(c, p, lab, ch, quad) / den;
}

double bit_llr(const Constellation& c, const InputDistribution& p, const Labeling& lab,
               ChannelPoint ch, int k, double y) {
    require_lab(c, p, lab);
    const double sqrt_rho = ch.sqrt_rho();
    std::vector<double> one, zero;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double u = y - sqrt_rho * c[j];
        (bit_of(lab, j, k) == 1 ? one : zero).push_back(std::log(p[j]) - 0.5 * u * u);
    }
    return (log_sum_exp(one) - std::log(bit_marginal(p, lab, k, 1))) -
           (log_sum_exp(zero) - std::log(bit_marginal(p, lab, k, 0)));
}

}  // namespace casym
