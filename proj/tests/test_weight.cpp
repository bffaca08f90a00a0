#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/rng.hpp"
#include "bergman/weight.hpp"

using namespace bergman;

TEST_CASE("f_eval on the parameter families") {
    CHECK(WeightSpec::constant_one().f(0.3) == doctest::Approx(1.0));
    CHECK(WeightSpec::power(2).f(0.5) == doctest::Approx(0.25));
    CHECK(WeightSpec::exponential(1, 1).f(0.5) == doctest::Approx(std::exp(-2.0)));

    // boundary limits
    CHECK(WeightSpec::power(1).f(0.0) == 0.0);
    CHECK(WeightSpec::exponential(1, 1).f(0.0) == 0.0);
    CHECK(WeightSpec::constant_one().f(0.0) == 1.0);
    CHECK(WeightSpec::exponential(2, 0).f(0.7) == doctest::Approx(std::exp(-2.0)));

    CHECK_THROWS_AS(WeightSpec::power(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec::exponential(-0.5, 1.0), std::invalid_argument);
}

TEST_CASE("weight_eval is f(-rho)") {
    const auto disc = RadialDomain::disc();
    const std::vector<double> half{0.5}, origin{0.0}, deep{0.8};

    CHECK(WeightSpec::constant_one().weight(disc, half) == doctest::Approx(1.0));
    CHECK(WeightSpec::power(1).weight(disc, origin) == doctest::Approx(1.0));
    CHECK(WeightSpec::power(1).weight(disc, deep) == doctest::Approx(0.36));

    CHECK_THROWS_AS(WeightSpec::power(1).weight(disc, std::vector<double>{1.5}),
                    std::invalid_argument);
}

TEST_CASE("weight composed with rho matches f of -rho to machine precision") {
    Rng rng(3);
    const auto ball = RadialDomain::ball(2);
    for (const auto& weight : {WeightSpec::power(2), WeightSpec::exponential(1, 1),
                               WeightSpec::power_exponential(1, 1, 2)}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> r{rng.uniform(0.0, 0.7), rng.uniform(0.0, 0.7)};
            if (!ball.contains(r)) continue;
            const double direct = weight.weight(ball, r);
            const double composed = weight.f(-ball.rho(r));
            CHECK(direct == doctest::Approx(composed).epsilon(1e-15));
        }
    }
}

TEST_CASE("log f is finite on the open half line") {
    Rng rng(9);
    for (const auto& weight :
         {WeightSpec::constant_one(), WeightSpec::power(3), WeightSpec::exponential(2, 1),
          WeightSpec::power_exponential(1, 1, 0.5)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const double x = std::exp(rng.uniform(-20.0, 3.0));
            CHECK(std::isfinite(weight.log_f(x)));
        }
    }
}

TEST_CASE("estimate_delta finds the convexity constant 1") {
    CHECK(estimate_delta(WeightSpec::constant_one(), 1.0, 64) == doctest::Approx(1.0));
    // AM-GM: ((x+y)/2)^2 >= xy with equality on the diagonal.
    CHECK(estimate_delta(WeightSpec::power(2), 1.0, 128) == doctest::Approx(1.0));
    CHECK(estimate_delta(WeightSpec::power(2), 7.0, 128) == doctest::Approx(1.0));
    // Harmonic-arithmetic: 1/x + 1/y >= 4/(x+y).
    const double d = estimate_delta(WeightSpec::exponential(1, 1), 1.0, 128);
    CHECK(d >= 1.0 - 1e-12);
    CHECK(d <= 1.0 + 1e-15);
}

TEST_CASE("estimate_delta does not increase under grid refinement") {
    for (const auto& weight : {WeightSpec::power(1), WeightSpec::exponential(1, 2),
                               WeightSpec::power_exponential(2, 1, 1)}) {
        double prev = estimate_delta(weight, 1.0, 16);
        for (int grid = 32; grid <= 256; grid *= 2) {
            const double cur = estimate_delta(weight, 1.0, grid);
            CHECK(cur <= prev + 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("weight midpoint ratio stays above delta on convex domains") {
    const auto disc = RadialDomain::disc();
    const auto c1 = check_weight_midpoint(WeightSpec::constant_one(), disc, 2000, 17);
    CHECK(c1.pass);
    CHECK(c1.min_ratio == doctest::Approx(1.0));

    const auto p1 = check_weight_midpoint(WeightSpec::power(1), disc, 5000, 17);
    CHECK(p1.pass);
    CHECK(p1.min_ratio >= 1.0 - 1e-9);

    const auto ball = RadialDomain::ball(2);
    const auto p3 = check_weight_midpoint(WeightSpec::power(3), ball, 5000, 23);
    CHECK(p3.pass);
    CHECK(p3.min_ratio >= 1.0 - 1e-9);
}

TEST_CASE("weight descriptors round-trip") {
    for (const auto& weight :
         {WeightSpec::constant_one(), WeightSpec::power(2), WeightSpec::exponential(1, 1),
          WeightSpec::power_exponential(0.5, 1, 2)}) {
        std::vector<std::string> tokens;
        std::istringstream in(weight.descriptor());
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
        CHECK(WeightSpec::from_descriptor(tokens) == weight);
    }
}
