#include <doctest.h>

#include <cmath>

#include "casym/exact_metrics.hpp"
#include "casym/mc_oracle.hpp"
#include "helpers.hpp"

using namespace casym;

namespace {

bool within(const EstimateWithError& e, double exact, double sigmas = 4.0) {
    return std::abs(e.estimate - exact) <= sigmas * e.standard_error + 1e-15;
}

SimConfig cfg(double rho, std::uint64_t samples = 1'000'000, std::uint64_t seed = 1, unsigned threads = 0) {
    return SimConfig{samples, seed, rho, threads};
}

}  // namespace

TEST_SUITE("mc_oracle") {

TEST_CASE("binary SEP") {
    const Constellation c({-1, 1});
    const auto u = InputDistribution::uniform(2);
    const auto e = simulate_sep(c, u, cfg(4.0));
    CHECK(e.samples == 1'000'000);
    CHECK(within(e, q_function(2.0)));
    CHECK(e.standard_error == doctest::Approx(std::sqrt(e.estimate * (1 - e.estimate) / (1e6 - 1))).epsilon(1e-9));
    const auto b = simulate_bep(c, u, nbc(1), cfg(4.0));
    CHECK(b.estimate == e.estimate);
    CHECK(b.standard_error == e.standard_error);
}

TEST_CASE("prior-only decisions") {
    const double eps = 0.01;
    const InputDistribution p({1 - 3 * eps, eps, eps, eps});
    const auto e = simulate_sep(mpam_unit_energy(2), p, cfg(0.0));
    CHECK(within(e, 3 * eps));
}

TEST_CASE("agreement with exact metrics") {
    const auto c = testing::ref_points();
    const auto p = testing::ref_probs();
    const auto ch = ChannelPoint::from_rho(9.0);
    CHECK(within(simulate_sep(c, p, cfg(9.0)), sep_exact(c, p, ch)));

    const auto pam4 = mpam_unit_energy(2);
    const auto u = InputDistribution::uniform(4);
    const auto ten = ChannelPoint::from_db(10.0);
    CHECK(within(simulate_bep(pam4, u, brgc(2), cfg(ten.rho())), bep_exact(pam4, u, brgc(2), ten)));
    const auto r5 = ChannelPoint::from_rho(5.0);
    const auto mi = simulate_mi(pam4, u, cfg(5.0));
    CHECK(within(mi, mi_exact(pam4, u, r5)));
    CHECK(mi.estimate <= entropy(u) + 4 * mi.standard_error);
    CHECK(within(simulate_mmse(pam4, u, cfg(5.0)), mmse_exact(pam4, u, r5)));
}

TEST_CASE("zero SNR") {
    const auto c = testing::ref_points();
    const auto p = testing::ref_probs();
    const auto mi = simulate_mi(c, p, cfg(0.0, 100000));
    CHECK(within(mi, 0.0));
    CHECK(within(simulate_mmse(c, p, cfg(0.0, 100000)), variance(c, p)));
}

TEST_CASE("anti-Gray loses more bits than Gray") {
    const auto pam4 = mpam_unit_energy(2);
    const auto u = InputDistribution::uniform(4);
    const double rho = db_to_linear(15.0);
    CHECK(simulate_bep(pam4, u, agc(2), cfg(rho)).estimate > simulate_bep(pam4, u, brgc(2), cfg(rho)).estimate);
}

TEST_CASE("deterministic across runs and thread counts") {
    const auto c = mpam_unit_energy(3);
    const auto u = InputDistribution::uniform(8);
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
        const auto a = cfg(3.0, 300'001, 17, 1);
        const auto b = cfg(3.0, 300'001, 17, threads);
        const auto ma = simulate_mi(c, u, a), mb = simulate_mi(c, u, b);
        CHECK(ma.estimate == mb.estimate);
        CHECK(ma.standard_error == mb.standard_error);
        CHECK(simulate_mmse(c, u, a).estimate == simulate_mmse(c, u, b).estimate);
        CHECK(simulate_sep(c, u, a).estimate == simulate_sep(c, u, b).estimate);
        CHECK(simulate_bep(c, u, agc(3), a).estimate == simulate_bep(c, u, agc(3), b).estimate);
    }
    CHECK(simulate_sep(c, u, cfg(3.0, 1000, 1)).estimate != simulate_sep(c, u, cfg(3.0, 1000, 2)).estimate);
}

TEST_CASE("standard error shrinks by root two per doubling") {
    const auto c = mpam_unit_energy(2);
    const auto u = InputDistribution::uniform(4);
    const auto small = simulate_mmse(c, u, cfg(2.0, 200'000, 5));
    const auto large = simulate_mmse(c, u, cfg(2.0, 400'000, 5));
    CHECK(std::abs(small.standard_error / large.standard_error / std::sqrt(2.0) - 1.0) < 0.1);
    const auto s1 = simulate_sep(c, u, cfg(2.0, 200'000, 5));
    const auto s2 = simulate_sep(c, u, cfg(2.0, 400'000, 5));
    CHECK(std::abs(s1.standard_error / s2.standard_error / std::sqrt(2.0) - 1.0) < 0.1);
}

TEST_CASE("configuration is validated") {
    const auto c = mpam_unit_energy(1);
    const auto u = InputDistribution::uniform(2);
    CHECK_THROWS_AS(simulate_sep(c, u, cfg(1.0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(simulate_sep(c, u, cfg(-1.0)), std::invalid_argument);
    CHECK_THROWS_AS(simulate_sep(c, InputDistribution::uniform(4), cfg(1.0)), std::invalid_argument);
}

}  // TEST_SUITE
