#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bergman/inequalities.hpp"
#include "bergman/rng.hpp"

using namespace bergman;

namespace {

MultiIndex mi(std::vector<int> v) { return MultiIndex(std::move(v)); }

SampledFunction constant_one_fn() {
    return {"one", [](std::span<const double>) { return 1.0; }};
}

}  // namespace

TEST_CASE("Prekopa-Leindler: indicator triple holds with equality") {
    const auto one = constant_one_fn();
    const auto report = check_prekopa_leindler(one, one, one, PLBox{{0.0}, {1.0}}, 0.5, 256);
    CHECK(report.hypothesis_verified);
    CHECK(report.pass);
    CHECK(report.worst_ratio == doctest::Approx(0.0).epsilon(1e-14));  // equality margin
}

TEST_CASE("Prekopa-Leindler: Gaussian triple holds") {
    SampledFunction gauss{"gauss", [](std::span<const double> x) {
                              return std::exp(-x[0] * x[0]);
                          }};
    const auto report =
        check_prekopa_leindler(gauss, gauss, gauss, PLBox{{-5.0}, {5.0}}, 0.5, 512);
    CHECK(report.hypothesis_verified);
    CHECK(report.pass);
}

TEST_CASE("Prekopa-Leindler: hypothesis failure is reported as such") {
    // f too large at one point for h: hypothesis cannot hold.
    SampledFunction h{"small", [](std::span<const double>) { return 0.5; }};
    const auto one = constant_one_fn();
    const auto report = check_prekopa_leindler(one, one, h, PLBox{{0.0}, {1.0}}, 0.5, 64);
    CHECK_FALSE(report.hypothesis_verified);
    CHECK_FALSE(report.pass);
}

TEST_CASE("Prekopa-Leindler: general t and the moment construction") {
    // The scalar lemma supplies the pointwise bound for the scaled triple
    // f = r^zeta lambda, g = r^(zeta+2 eta) lambda, h = 2^eta r^(zeta+eta) lambda
    // on the disc radial image; lambda = 1 - r^2 (power-1 weight).
    auto lambda = [](double r) { return 1.0 - r * r; };
    for (int zeta : {0, 1, 3}) {
        for (int eta : {0, 1, 2}) {
            SampledFunction f{"f", [=](std::span<const double> x) {
                                  return std::pow(x[0], zeta) * lambda(x[0]);
                              }};
            SampledFunction g{"g", [=](std::span<const double> x) {
                                  return std::pow(x[0], zeta + 2 * eta) * lambda(x[0]);
                              }};
            const double scale = std::pow(2.0, eta);
            SampledFunction h{"h", [=](std::span<const double> x) {
                                  return scale * std::pow(x[0], zeta + eta) * lambda(x[0]);
                              }};
            const auto report =
                check_prekopa_leindler(f, g, h, PLBox{{0.0}, {1.0}}, 0.5, 512);
            INFO("zeta=", zeta, " eta=", eta);
            CHECK(report.hypothesis_verified);
            CHECK(report.pass);
        }
    }

    // t != 1/2 goes through the direct combination-point path.
    const auto one = constant_one_fn();
    const auto report = check_prekopa_leindler(one, one, one, PLBox{{0.0}, {1.0}}, 0.25, 64);
    CHECK(report.pass);
}

TEST_CASE("lemma coefficient ratio on the disc follows the closed form") {
    const auto table =
        MomentTable::closed_form(RadialDomain::disc(), WeightSpec::constant_one(), 110);
    // (m+b+1)/sqrt((m+1)(m+2b+1)) with pi/(m+1) moments
    auto oracle = [](int m, int b) {
        return (m + b + 1.0) / std::sqrt((m + 1.0) * (m + 2.0 * b + 1.0));
    };
    CHECK(lemma_coeff_ratio(table, mi({4}), mi({0})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lemma_coeff_ratio(table, mi({0}), mi({1})) ==
          doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
    for (int m : {0, 1, 5, 17, 50}) {
        for (int b : {1, 2, 5}) {
            CHECK(lemma_coeff_ratio(table, mi({m}), mi({b})) ==
                  doctest::Approx(oracle(m, b)).epsilon(1e-12));
        }
    }
    // ratio tends to 1 at fixed b
    CHECK(lemma_coeff_ratio(table, mi({50}), mi({1})) <= 1.001);
}

TEST_CASE("lemma coefficient scan finds the disc worst case at alpha = 0") {
    const auto table =
        MomentTable::closed_form(RadialDomain::disc(), WeightSpec::constant_one(), 54);
    const auto report = scan_lemma_coeff(table, mi({1}), 50);
    CHECK(report.pass);
    CHECK(report.worst_ratio == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(report.worst_witness == "alpha=(0)");
    CHECK(report.min_ratio >= 1.0 - 1e-9);
}

TEST_CASE("lemma coefficient scan on the polydisc is the square of the disc case") {
    const auto table = MomentTable::closed_form(RadialDomain::polydisc({1.0, 1.0}),
                                                WeightSpec::constant_one(), 24);
    const auto report = scan_lemma_coeff(table, mi({1, 1}), 20);
    CHECK(report.pass);
    const double disc_worst = 2.0 / std::sqrt(3.0);
    CHECK(report.worst_ratio == doctest::Approx(disc_worst * disc_worst).epsilon(1e-12));
    CHECK(report.worst_witness == "alpha=(0 0)");
}

TEST_CASE("lemma coefficient scan passes on a quadrature ball table") {
    const auto table = MomentTable::build(RadialDomain::ball(2), WeightSpec::power(1), 14, 1e-10);
    const auto report = scan_lemma_coeff(table, mi({1, 0}), 12);
    CHECK(report.pass);
    CHECK(report.worst_ratio <= 4.0 + 1e-6);
    CHECK(report.min_ratio >= 1.0 - 1e-9);
}

TEST_CASE("binomial factor values and monotonicity") {
    CHECK(binomial_factor(mi({7}), mi({0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binomial_factor(mi({0}), mi({1})) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(binomial_factor(mi({0}), mi({2})) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

    for (int alpha : {0, 1, 4, 20}) {
        double prev = 2.0;
        for (int b = 0; b <= 6; ++b) {
            const double v = binomial_factor(mi({alpha}), mi({b}));
            CHECK(v <= prev + 1e-15);
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }

    // multiplicative across coordinates
    CHECK(binomial_factor(mi({2, 0}), mi({1, 2})) ==
          doctest::Approx(binomial_factor(mi({2}), mi({1})) * binomial_factor(mi({0}), mi({2})))
              .epsilon(1e-14));
}

TEST_CASE("scalar midpoint inequality") {
    // equality family: ratio is exactly 2^b at u = v
    for (int b = 0; b <= 5; ++b) {
        const double gap = scalar_midpoint_log_gap(3.7, 3.7, 11, b);
        CHECK(gap == doctest::Approx(b * std::numbers::ln2).epsilon(1e-13));
    }

    // boundary degeneracies
    CHECK(check_scalar_midpoint(0.0, 1.0, 1, 0));
    CHECK(check_scalar_midpoint(0.0, 1.0, 3, 2));
    CHECK(check_scalar_midpoint(0.0, 0.0, 2, 1));

    // the substitution form (t + 1/t)/2 >= 1 behind the lemma
    Rng rng(101);
    for (int trial = 0; trial < 10000; ++trial) {
        const double t = std::exp(rng.uniform(-6.0, 6.0));
        CHECK(0.5 * (t + 1.0 / t) >= 1.0);
    }

    // random sweep
    long violations = 0;
    for (long trial = 0; trial < 200000; ++trial) {
        const double u = 10.0 * (1.0 - rng.uniform());
        const double v = 10.0 * (1.0 - rng.uniform());
        const int a = static_cast<int>(rng.uniform_int(51));
        const int b = static_cast<int>(rng.uniform_int(6));
        if (!check_scalar_midpoint(u, v, a, b)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("inequality reports serialize to CSV") {
    InequalityReport report;
    report.name = "demo";
    report.parameters = "beta=(1)";
    report.worst_ratio = 1.25;
    report.min_ratio = 1.0;
    report.worst_witness = "alpha=(0)";
    report.samples = 42;
    report.pass = true;
    const auto row = report.csv_row();
    CHECK(row.find("demo") != std::string::npos);
    CHECK(row.find("1.25") != std::string::npos);
    CHECK(row.find("pass") != std::string::npos);
    CHECK(InequalityReport::csv_header().find("worst_ratio") != std::string::npos);
}
