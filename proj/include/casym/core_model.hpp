#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace casym {

/// Ordered one-dimensional constellation with M = 2^m distinct points.
///
/// Points are kept exactly as given (no implicit energy normalization) and
/// must be strictly increasing and finite.
class Constellation {
public:
    explicit Constellation(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    double operator[](std::size_t i) const { return points_[i]; }
    std::size_t size() const { return points_.size(); }
    int bits() const { return bits_; }

private:
    std::vector<double> points_;
    int bits_ = 0;
};

/// Probability mass function over the points of a constellation.
/// Entries lie strictly inside (0,1) and sum to one within 1e-12.
class InputDistribution {
public:
    explicit InputDistribution(std::vector<double> probs);

    static InputDistribution uniform(std::size_t size);

    std::span<const double> probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }
    std::size_t size() const { return probs_.size(); }
    bool is_uniform(double tol = 1e-15) const;

private:
    std::vector<double> probs_;
};

/// Channel scale factor rho of Y = sqrt(rho) X + Z.
class ChannelPoint {
public:
    static ChannelPoint from_rho(double rho);
    static ChannelPoint from_db(double rho_db);

    double rho() const { return rho_; }
    double sqrt_rho() const;
    double db() const;
    /// SNR gamma = rho * E_s.
    double gamma(double energy) const { return rho_ * energy; }

private:
    explicit ChannelPoint(double rho) : rho_(rho) {}
    double rho_;
};

double db_to_linear(double db);
double linear_to_db(double linear);

// Relative tolerance used to decide whether a distance equals the MED.
inline constexpr double kMedRelTol = 1e-9;

double med(const Constellation& c);
bool at_med(double distance, double med_value);

double avg_energy(const Constellation& c, const InputDistribution& p);
double mean(const Constellation& c, const InputDistribution& p);
double variance(const Constellation& c, const InputDistribution& p);

/// Scales the constellation by 1/sqrt(E_s) so that its average energy is one.
Constellation normalize_energy(const Constellation& c, const InputDistribution& p);

/// M-PAM with points x_i = -(M - 2i + 1) delta, i = 1..M.
Constellation mpam(int bits, double delta);
/// M-PAM whose uniform-input average energy equals `energy`.
Constellation mpam_unit_energy(int bits, double energy = 1.0);

int a_constant(const Constellation& c);
double b_constant(const Constellation& c, const InputDistribution& p);

/// Entropy in nats.
double entropy(const InputDistribution& p);
double entropy(std::span<const double> probs);

double q_function(double x);
/// log Q(x), accurate far into the upper tail where Q itself underflows.
double log_q_function(double x);
/// G(x) = exp(-x^2/2) / (x sqrt(2 pi)); upper bound on Q(x) for x > 0.
double g_function(double x);

/// AWGN capacity 0.5 log(1 + gamma) in nats.
double awgn_capacity(double gamma);

/// log(sum exp(v)) over a span, with max subtraction.
double log_sum_exp(std::span<const double> values);
/// log(1 - exp(a)) for a <= 0.
double log1m_exp(double a);

}  // namespace casym
