#include "casym/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace casym {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    int m = 0;
    while ((std::size_t{1} << m) < n) ++m;
    return m;
}

}  // namespace

Constellation::Constellation(std::vector<double> points) : points_(std::move(points)) {
    if (!is_power_of_two(points_.size()))
        throw std::invalid_argument("constellation size must be a power of two >= 2, got " +
                                    std::to_string(points_.size()));
    for (double x : points_)
        if (!std::isfinite(x)) throw std::invalid_argument("constellation points must be finite");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] < points_[i]))
            throw std::invalid_argument("constellation points must be strictly increasing");
    bits_ = log2_exact(points_.size());
}

InputDistribution::InputDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("input distribution is empty");
    for (double v : probs_)
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument("probabilities must lie strictly inside (0,1)");
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("probabilities must sum to one");
}

InputDistribution InputDistribution::uniform(std::size_t size) {
    if (size < 2) throw std::invalid_argument("uniform distribution needs at least two symbols");
    return InputDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

bool InputDistribution::is_uniform(double tol) const {
    const double u = 1.0 / static_cast<double>(probs_.size());
    return std::all_of(probs_.begin(), probs_.end(),
                       [&](double v) { return std::abs(v - u) <= tol; });
}

ChannelPoint ChannelPoint::from_rho(double rho) {
    if (!(rho >= 0.0) || std::isinf(rho))
        throw std::invalid_argument("rho must be finite and nonnegative");
    return ChannelPoint(rho);
}

ChannelPoint ChannelPoint::from_db(double rho_db) { return from_rho(db_to_linear(rho_db)); }

double ChannelPoint::sqrt_rho() const { return std::sqrt(rho_); }

double ChannelPoint::db() const { return linear_to_db(rho_); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double med(const Constellation& c) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < c.size(); ++i) d = std::min(d, c[i] - c[i - 1]);
    return d;
}

bool at_med(double distance, double med_value) {
    return std::abs(std::abs(distance) - med_value) <= kMedRelTol * med_value;
}

static void require_same_size(const Constellation& c, const InputDistribution& p) {
    if (c.size() != p.size())
        throw std::invalid_argument("constellation and distribution sizes differ");
}

double avg_energy(const Constellation& c, const InputDistribution& p) {
    require_same_size(c, p);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) e += p[i] * c[i] * c[i];
    return e;
}

double mean(const Constellation& c, const InputDistribution& p) {
    require_same_size(c, p);
    double mu = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) mu += p[i] * c[i];
    return mu;
}

double variance(const Constellation& c, const InputDistribution& p) {
    const double mu = mean(c, p);
    double v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) v += p[i] * (c[i] - mu) * (c[i] - mu);
    return v;
}

Constellation normalize_energy(const Constellation& c, const InputDistribution& p) {
    const double es = avg_energy(c, p);
    if (!(es > 0.0)) throw std::domain_error("cannot normalize a zero-energy constellation");
    const double scale = 1.0 / std::sqrt(es);
    std::vector<double> pts(c.points().begin(), c.points().end());
    for (double& x : pts) x *= scale;
    return Constellation(std::move(pts));
}

Constellation mpam(int bits, double delta) {
    if (bits < 1 || bits > 30) throw std::invalid_argument("mpam: bits must be in [1, 30]");
    if (!(delta > 0.0)) throw std::invalid_argument("mpam: delta must be positive");
    const int size = 1 << bits;
    std::vector<double> pts(static_cast<std::size_t>(size));
    for (int i = 1; i <= size; ++i) pts[i - 1] = -static_cast<double>(size - 2 * i + 1) * delta;
    return Constellation(std::move(pts));
}

Constellation mpam_unit_energy(int bits, double energy) {
    if (bits < 1 || bits > 30) throw std::invalid_argument("mpam: bits must be in [1, 30]");
    const double size = static_cast<double>(1 << bits);
    return mpam(bits, std::sqrt(3.0 * energy / (size * size - 1.0)));
}

int a_constant(const Constellation& c) {
    const double d = med(c);
    int pairs = 0;
    // Points are ordered, so only adjacent points can be at MED.
    for (std::size_t i = 1; i < c.size(); ++i)
        if (at_med(c[i] - c[i - 1], d)) ++pairs;
    return 2 * pairs;
}

double b_constant(const Constellation& c, const InputDistribution& p) {
    require_same_size(c, p);
    const double d = med(c);
    double b = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (at_med(c[i] - c[i - 1], d)) b += 2.0 * std::sqrt(p[i] * p[i - 1]);
    return b;
}

double entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double v : probs)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double entropy(const InputDistribution& p) { return entropy(p.probs()); }

double q_function(double x) {
    // t = x/sqrt(2) is rounded; a first-order correction keeps full relative
    // precision in the tail, where the error is amplified by about t^2.
    constexpr double kHi = 0.70710678118654757;
    constexpr double kLo = -4.8336466567264567e-17;
    if (!std::isfinite(x)) return 0.5 * std::erfc(x);
    const double t = x * kHi;
    const double dt = std::fma(x, kHi, -t) + x * kLo;
    const double q = 0.5 * std::erfc(t);
    return q - dt * std::exp(-t * t) / std::sqrt(std::numbers::pi);
}

double log_q_function(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return std::log1p(-q_function(-x));
    if (x <= 30.0) return std::log(q_function(x));
    if (std::isinf(x)) return -std::numeric_limits<double>::infinity();
    // Mills ratio Q(x)/phi(x) by backward evaluation of its continued fraction.
    double f = x;
    for (int k = 60; k >= 1; --k) f = x + k / f;
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi) - std::log(f);
}

double g_function(double x) {
    if (!(x > 0.0)) throw std::domain_error("g_function requires x > 0");
    return std::exp(-0.5 * x * x) / (x * std::sqrt(2.0 * std::numbers::pi));
}

double awgn_capacity(double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("awgn_capacity requires gamma >= 0");
    return 0.5 * std::log1p(gamma);
}

double log_sum_exp(std::span<const double> values) {
    double top = -std::numeric_limits<double>::infinity();
    for (double v : values) top = std::max(top, v);
    if (std::isinf(top)) return top;
    double s = 0.0;
    for (double v : values) s += std::exp(v - top);
    return top + std::log(s);
}

double log1m_exp(double a) {
    // Maechler's switch point keeps full relative accuracy on both sides.
    return a > -std::numbers::ln2 ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a));
}

}  // namespace casym
