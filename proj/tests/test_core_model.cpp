#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "casym/core_model.hpp"
#include "helpers.hpp"

using namespace casym;
using testing::ref_points;
using testing::ref_probs;

TEST_SUITE("core_model") {

TEST_CASE("constellation invariants") {
    CHECK_NOTHROW(Constellation({-1, 1}));
    CHECK_THROWS_AS(Constellation({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({-1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({-1, 1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({-1, -1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({-1, std::numeric_limits<double>::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(Constellation({std::nan(""), 1}), std::invalid_argument);
    CHECK(Constellation({-3, -1, 1, 3}).bits() == 2);
}

TEST_CASE("distribution invariants") {
    CHECK_NOTHROW(InputDistribution({0.25, 0.75}));
    CHECK_THROWS_AS(InputDistribution({0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(InputDistribution({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(InputDistribution({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(InputDistribution({0.5, 0.5 + 1e-11}), std::invalid_argument);
    CHECK_NOTHROW(InputDistribution({0.5, 0.5 + 1e-13}));
    CHECK(InputDistribution::uniform(8).is_uniform());
    CHECK_FALSE(ref_probs().is_uniform());
    CHECK_THROWS_AS(avg_energy(ref_points(), InputDistribution::uniform(2)), std::invalid_argument);
}

TEST_CASE("channel point") {
    CHECK_THROWS_AS(ChannelPoint::from_rho(-1.0), std::invalid_argument);
    const auto ch = ChannelPoint::from_db(10.0);
    CHECK(ch.rho() == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(ch.gamma(2.0) == doctest::Approx(20.0));
    CHECK(ChannelPoint::from_rho(0.0).sqrt_rho() == 0.0);
    for (double db = -30.0; db <= 60.0; db += 0.37) {
        const double back = linear_to_db(db_to_linear(db));
        CHECK(std::abs(back - db) <= 1e-12 * std::max(1.0, std::abs(db)));
        const double lin = db_to_linear(db);
        CHECK(testing::close_rel(db_to_linear(linear_to_db(lin)), lin, 1e-12));
    }
}

TEST_CASE("med examples") {
    CHECK(med(ref_points()) == 2.0);
    CHECK(med(Constellation({-1, 1})) == 2.0);
    CHECK(med(mpam(3, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("avg_energy examples") {
    CHECK(avg_energy(ref_points(), ref_probs()) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(avg_energy(Constellation({-1, 1}), InputDistribution::uniform(2)) == doctest::Approx(1.0));
    CHECK(avg_energy(ref_points(), InputDistribution({1. / 8, 3. / 8, 3. / 8, 1. / 8})) ==
          doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("normalize_energy examples") {
    const auto u = InputDistribution::uniform(4);
    const auto n1 = normalize_energy(ref_points(), u);
    CHECK(avg_energy(n1, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(med(n1) == doctest::Approx(2.0 / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(std::abs(med(n1) - 0.6325) < 5e-5);

    const InputDistribution p2({1. / 8, 3. / 8, 3. / 8, 1. / 8});
    const auto n2 = normalize_energy(ref_points(), p2);
    CHECK(std::abs(med(n2) - 0.7559) < 5e-5);

    const auto again = normalize_energy(n1, u);
    for (std::size_t i = 0; i < 4; ++i) CHECK(again[i] == doctest::Approx(n1[i]).epsilon(1e-15));
    CHECK_THROWS_AS(normalize_energy(Constellation({-1e-200, 1e-200}), InputDistribution::uniform(2)),
                    std::domain_error);
}

TEST_CASE("mpam examples") {
    const auto c = mpam(2, 1.0);
    CHECK(std::vector<double>(c.points().begin(), c.points().end()) == std::vector<double>{-3, -1, 1, 3});
    const auto b = mpam(1, 0.5);
    CHECK(b[0] == -0.5);
    CHECK(b[1] == 0.5);
    const auto unit = mpam_unit_energy(2);
    const double delta = std::sqrt(0.2);
    CHECK(unit[0] == doctest::Approx(-3 * delta));
    CHECK(unit[1] == doctest::Approx(-delta));
    CHECK(avg_energy(unit, InputDistribution::uniform(4)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(mpam(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mpam(2, 0.0), std::invalid_argument);
}

TEST_CASE("a_constant and b_constant examples") {
    CHECK(a_constant(ref_points()) == 4);
    CHECK(a_constant(mpam(3, 1.0)) == 14);
    CHECK(a_constant(Constellation({-1, 1})) == 2);
    const double b = b_constant(ref_points(), ref_probs());
    CHECK(std::abs(b - (2 * std::sqrt(0.02) + 2 * std::sqrt(0.12))) < 1e-12);
    CHECK(std::abs(b - 0.9758) < 2e-4);
    CHECK(b_constant(mpam(3, 1.0), InputDistribution::uniform(8)) == doctest::Approx(1.75).epsilon(1e-14));
}

TEST_CASE("MED tolerance is relative") {
    // gaps within 4e-10 of each other tie; gaps 2e-8 apart do not
    CHECK(a_constant(Constellation({0, 1, 2 + 2e-10, 3})) == 6);
    CHECK(a_constant(Constellation({0, 1, 2 + 1e-8, 3})) == 2);
}

TEST_CASE("entropy examples") {
    CHECK(std::abs(entropy(InputDistribution::uniform(4)) - 1.3863) < 5e-5);
    CHECK(std::abs(entropy(InputDistribution({1. / 8, 3. / 8, 3. / 8, 1. / 8})) - 1.2555) < 5e-5);
    CHECK(std::abs(entropy(InputDistribution({16. / 25, 4. / 25, 1. / 25, 4. / 25})) - 1.0008) < 5e-5);
}

TEST_CASE("q_function against high-precision values") {
    CHECK(q_function(0.0) == 0.5);
    struct Ref {
        double x, q, logq;
    };
    // 30-digit references
    const Ref refs[] = {
        {1.0, 0.15865525393145705141, -1.8410216450092635058},
        {2.0, 0.0227501319481792072, -3.7831843336820319488},
        {4.0, 3.1671241833119921254e-5, -10.360101486527290828},
        {8.0, 6.2209605742717841235e-16, -35.013437159914549896},
        {30.0, 4.9067139271481870595e-198, -454.32124395634319711},
    };
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CHECK(testing::close_rel(q_function(r.x), r.q, 1e-13));
        CHECK(testing::close_rel(log_q_function(r.x), r.logq, 1e-14));
    }
    CHECK(testing::close_rel(log_q_function(35.0), -616.97510126192251347, 1e-14));
    CHECK(testing::close_rel(log_q_function(40.0), -804.60844201375378817, 1e-14));
    CHECK(log_q_function(-3.0) == doctest::Approx(std::log1p(-q_function(3.0))).epsilon(1e-15));
    CHECK(q_function(40.0) == 0.0);  // underflows; the log form does not
}

TEST_CASE("log Q(40) matches the asymptotic series") {
    const double x = 40.0;
    const double series = 1.0 - 1.0 / (x * x) + 3.0 / std::pow(x, 4) - 15.0 / std::pow(x, 6) +
                          105.0 / std::pow(x, 8) - 945.0 / std::pow(x, 10);
    const double expected = -0.5 * x * x - std::log(x * std::sqrt(2 * std::numbers::pi)) + std::log(series);
    CHECK(std::abs(log_q_function(x) - expected) < 1e-12);
}

TEST_CASE("q_function symmetry") {
    for (double x = -8.0; x <= 8.0; x += 0.125) {
        CAPTURE(x);
        CHECK(std::abs(q_function(x) + q_function(-x) - 1.0) <= 1e-14);
    }
}

TEST_CASE("g_function") {
    CHECK(g_function(1.0) == doctest::Approx(std::exp(-0.5) / std::sqrt(2 * std::numbers::pi)));
    CHECK(std::abs(g_function(1.0) - 0.2420) < 1e-4);
    CHECK(std::abs(g_function(8.0) / q_function(8.0) - 1.0) < 0.02);
    double prev = std::numeric_limits<double>::infinity();
    for (double x : {2.0, 4.0, 8.0}) {
        const double ratio = g_function(x) / q_function(x);
        CHECK(ratio > 1.0);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK_THROWS_AS(g_function(0.0), std::domain_error);
}

TEST_CASE("awgn_capacity examples") {
    CHECK(awgn_capacity(0.0) == 0.0);
    CHECK(awgn_capacity(1.0) == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(awgn_capacity(3.0) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(awgn_capacity(-1.0), std::domain_error);
}

TEST_CASE("log-domain helpers") {
    const std::vector<double> v{-1000.0, -1001.0, -1002.0};
    const double expected = -1000.0 + std::log(1 + std::exp(-1.0) + std::exp(-2.0));
    CHECK(log_sum_exp(v) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(log1m_exp(-1e-20) == doctest::Approx(std::log(1e-20)).epsilon(1e-12));
    CHECK(log1m_exp(-50.0) == doctest::Approx(-std::exp(-50.0)).epsilon(1e-12));
}

TEST_CASE("translation, negation and relabeling invariance") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = testing::random_constellation(3, rng, true);
        const auto p = testing::random_distribution(8, rng);
        std::vector<double> shifted, negated;
        for (double x : c.points()) shifted.push_back(x + 3.7);
        for (auto it = c.points().rbegin(); it != c.points().rend(); ++it) negated.push_back(-*it);
        std::vector<double> rev(p.probs().rbegin(), p.probs().rend());
        const Constellation cs(shifted), cn(negated);
        const InputDistribution pr(rev);
        CHECK(med(cs) == doctest::Approx(med(c)));
        CHECK(med(cn) == doctest::Approx(med(c)));
        CHECK(a_constant(cs) == a_constant(c));
        CHECK(a_constant(cn) == a_constant(c));
        CHECK(b_constant(cs, p) == doctest::Approx(b_constant(c, p)));
        // negation reverses the order of points, so probabilities follow
        CHECK(b_constant(cn, pr) == doctest::Approx(b_constant(c, p)));
        CHECK(b_constant(c, InputDistribution::uniform(8)) * 8 == doctest::Approx(a_constant(c)).epsilon(1e-15));
    }
    // b_constant depends on which point carries which probability
    const InputDistribution swapped({0.1, 0.3, 0.2, 0.4});
    CHECK(std::abs(b_constant(ref_points(), swapped) - b_constant(ref_points(), ref_probs())) > 1e-3);
    CHECK(a_constant(ref_points()) == a_constant(Constellation({-4, -2, 2, 4})));
}

TEST_CASE("scaling and A bounds") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const int bits = 1 + trial % 4;
        const auto c = testing::random_constellation(bits, rng, trial % 2 == 0);
        std::vector<double> scaled;
        for (double x : c.points()) scaled.push_back(2.5 * x);
        const Constellation cs(scaled);
        CHECK(med(cs) == doctest::Approx(2.5 * med(c)));
        CHECK(a_constant(cs) == a_constant(c));
        const auto p = InputDistribution::uniform(c.size());
        CHECK(avg_energy(cs, p) == doctest::Approx(6.25 * avg_energy(c, p)));
        const int a = a_constant(c);
        CHECK(a >= 2);
        CHECK(a <= 2 * (static_cast<int>(c.size()) - 1));
        CHECK(a % 2 == 0);
    }
    for (int m = 1; m <= 6; ++m) CHECK(a_constant(mpam(m, 0.3)) == 2 * ((1 << m) - 1));
}

TEST_CASE("entropy bound") {
    std::mt19937_64 rng(13);
    for (std::size_t size : {2u, 4u, 8u, 16u}) {
        CHECK(std::abs(entropy(InputDistribution::uniform(size)) - std::log(static_cast<double>(size))) < 1e-12);
        for (int trial = 0; trial < 10; ++trial)
            CHECK(entropy(testing::random_distribution(size, rng)) < std::log(static_cast<double>(size)));
    }
}

}  // TEST_SUITE
