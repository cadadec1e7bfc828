#include "casym/mc_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "detail/parallel.hpp"
#include "detail/random.hpp"

namespace casym {

namespace {

constexpr std::uint64_t kChunk = 1u << 16;

struct Draw {
    std::size_t index;  // transmitted symbol
    double noise;
};

struct Accumulator {
    double n = 0.0, mean = 0.0, m2 = 0.0;

    void add(double v) {
        n += 1.0;
        const double delta = v - mean;
        mean += delta / n;
        m2 += delta * (v - mean);
    }
    void merge(const Accumulator& o) {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double delta = o.mean - mean;
        mean += delta * o.n / total;
        m2 += o.m2 + delta * delta * n * o.n / total;
        n = total;
    }
};

class Sampler {
public:
    Sampler(const Constellation& c, const InputDistribution& p, double rho)
        : c_(c), sqrt_rho_(std::sqrt(rho)), logp_(c.size()), cdf_(c.size()) {
        if (c.size() != p.size()) throw std::invalid_argument("constellation and distribution sizes differ");
        if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be finite and >= 0");
        double acc = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            logp_[j] = std::log(p[j]);
            acc += p[j];
            cdf_[j] = acc;
        }
        cdf_.back() = 1.0;
    }

    Draw draw(detail::SplitMix64& rng) const {
        const double u = rng.uniform_open();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const auto index = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), c_.size() - 1);
        // Box-Muller, one normal per sample
        const double r = std::sqrt(-2.0 * std::log(rng.uniform_open()));
        const double z = r * std::cos(2.0 * std::numbers::pi * rng.uniform_open());
        return {index, z};
    }

    double output(const Draw& d) const { return sqrt_rho_ * c_[d.index] + d.noise; }

    /// log p_j - (y - sqrt(rho) x_j)^2 / 2 for every j.
    void log_weights(double y, std::vector<double>& out) const {
        out.resize(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) {
            const double u = y - sqrt_rho_ * c_[j];
            out[j] = logp_[j] - 0.5 * u * u;
        }
    }

    std::size_t decide(double y, std::vector<double>& scratch) const {
        log_weights(y, scratch);
        std::size_t best = 0;
        for (std::size_t j = 1; j < scratch.size(); ++j)
            if (scratch[j] > scratch[best]) best = j;
        return best;
    }

    const Constellation& constellation() const { return c_; }

private:
    const Constellation& c_;
    double sqrt_rho_;
    std::vector<double> logp_;
    std::vector<double> cdf_;
};

template <class Sample>
EstimateWithError run(const SimConfig& cfg, Sample&& sample) {
    if (cfg.samples < 1) throw std::invalid_argument("samples must be >= 1");
    const std::uint64_t chunks = (cfg.samples + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(chunks);
    detail::parallel_for(chunks, cfg.threads, [&](std::size_t chunk) {
        std::vector<double> scratch;
        Accumulator acc;
        const std::uint64_t begin = chunk * kChunk;
        const std::uint64_t end = std::min(cfg.samples, begin + kChunk);
        for (std::uint64_t s = begin; s < end; ++s) {
            detail::SplitMix64 rng(detail::stream_seed(cfg.seed, s));
            acc.add(sample(rng, scratch));
        }
        partial[chunk] = acc;
    });
    Accumulator total;
    for (const auto& a : partial) total.merge(a);
    EstimateWithError out;
    out.estimate = total.mean;
    out.samples = cfg.samples;
    out.standard_error = cfg.samples > 1 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
    return out;
}

}  // namespace

EstimateWithError simulate_sep(const Constellation& c, const InputDistribution& p,
                               const SimConfig& cfg) {
    const Sampler sampler(c, p, cfg.rho);
    return run(cfg, [&](detail::SplitMix64& rng, std::vector<double>& scratch) {
        const Draw d = sampler.draw(rng);
        return sampler.decide(sampler.output(d), scratch) != d.index ? 1.0 : 0.0;
    });
}

EstimateWithError simulate_bep(const Constellation& c, const InputDistribution& p,
                               const Labeling& lab, const SimConfig& cfg) {
    if (lab.size() != c.size()) throw std::invalid_argument("labeling and constellation sizes differ");
    const Sampler sampler(c, p, cfg.rho);
    const double bits = lab.bits();
    return run(cfg, [&](detail::SplitMix64& rng, std::vector<double>& scratch) {
        const Draw d = sampler.draw(rng);
        const std::size_t hat = sampler.decide(sampler.output(d), scratch);
        const auto diff = static_cast<unsigned>(lab[d.index] ^ lab[hat]);
        return std::popcount(diff) / bits;
    });
}

EstimateWithError simulate_mi(const Constellation& c, const InputDistribution& p,
                              const SimConfig& cfg) {
    const Sampler sampler(c, p, cfg.rho);
    return run(cfg, [&](detail::SplitMix64& rng, std::vector<double>& scratch) {
        const Draw d = sampler.draw(rng);
        sampler.log_weights(sampler.output(d), scratch);
        return -0.5 * d.noise * d.noise - log_sum_exp(scratch);
    });
}

EstimateWithError simulate_mmse(const Constellation& c, const InputDistribution& p,
                                const SimConfig& cfg) {
    const Sampler sampler(c, p, cfg.rho);
    return run(cfg, [&](detail::SplitMix64& rng, std::vector<double>& scratch) {
        const Draw d = sampler.draw(rng);
        sampler.log_weights(sampler.output(d), scratch);
        const double top = *std::max_element(scratch.begin(), scratch.end());
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < scratch.size(); ++j) {
            const double w = std::exp(scratch[j] - top);
            num += w * c[j];
            den += w;
        }
        const double err = c[d.index] - num / den;
        return err * err;
    });
}

}  // namespace casym
