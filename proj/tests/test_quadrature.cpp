#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casym/quadrature.hpp"

using casym::QuadratureSpec;

namespace {

double integrate(const QuadratureSpec& q, auto f) {
    double s = 0.0;
    for (int i = 0; i < q.nodes(); ++i) s += q.weights()[i] * f(q.abscissae()[i]);
    return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("small rules match closed forms") {
    const QuadratureSpec q2(2);
    CHECK(q2.abscissae()[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(q2.weights()[0] == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-15));
    const QuadratureSpec q3(3);
    CHECK(q3.abscissae()[1] == 0.0);
    CHECK(q3.abscissae()[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(q3.weights()[1] == doctest::Approx(2 * std::sqrt(std::numbers::pi) / 3).epsilon(1e-15));
}

TEST_CASE("rules are symmetric, ascending and integrate moments") {
    for (int n : {2, 5, 20, 64, 300, 301, 600, 1200, 4000}) {
        CAPTURE(n);
        const QuadratureSpec q(n);
        REQUIRE(q.nodes() == n);
        for (int i = 0; i < n; ++i) {
            CHECK(q.abscissae()[i] == -q.abscissae()[n - 1 - i]);
            CHECK(q.weights()[i] == q.weights()[n - 1 - i]);
            CHECK(q.weights()[i] >= 0.0);
            if (i > 0) CHECK(q.abscissae()[i] > q.abscissae()[i - 1]);
        }
        const double root_pi = std::sqrt(std::numbers::pi);
        CHECK(integrate(q, [](double) { return 1.0; }) == doctest::Approx(root_pi).epsilon(1e-13));
        CHECK(integrate(q, [](double t) { return t * t; }) == doctest::Approx(root_pi / 2).epsilon(1e-13));
        if (n >= 3)
            CHECK(integrate(q, [](double t) { return t * t * t * t; }) ==
                  doctest::Approx(0.75 * root_pi).epsilon(1e-12));
    }
}

TEST_CASE("smooth integrand converges") {
    // integral of exp(-t^2) cos(t) = sqrt(pi) exp(-1/4)
    const double exact = std::sqrt(std::numbers::pi) * std::exp(-0.25);
    CHECK(integrate(QuadratureSpec(300), [](double t) { return std::cos(t); }) ==
          doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("rules are cached and validated") {
    const QuadratureSpec a(300), b(300);
    CHECK(a.abscissae().data() == b.abscissae().data());
    CHECK(QuadratureSpec().nodes() == casym::kDefaultQuadratureNodes);
    CHECK_THROWS_AS(QuadratureSpec(1), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureSpec(4001), std::invalid_argument);
}

}  // TEST_SUITE
