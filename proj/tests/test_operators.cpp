#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/inequalities.hpp"
#include "bergman/operators.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/rng.hpp"

using namespace bergman;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

MultiIndex mi(std::vector<int> v) { return MultiIndex(std::move(v)); }

MomentTable disc_table(int degree, const WeightSpec& w = WeightSpec::constant_one()) {
    return MomentTable::closed_form(RadialDomain::disc(), w, degree);
}

MonomialPolynomial random_mixed(Rng& rng, int dim, int degree, int terms) {
    MonomialPolynomial poly(dim);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> p(static_cast<size_t>(dim)), q(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            p[static_cast<size_t>(i)] = static_cast<int>(rng.uniform_int(degree + 1));
            q[static_cast<size_t>(i)] = static_cast<int>(rng.uniform_int(degree + 1));
        }
        poly.add_term(MultiIndex(p), MultiIndex(q), cd(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    return poly;
}

MonomialPolynomial random_holomorphic(Rng& rng, int dim, int degree, int terms) {
    MonomialPolynomial poly(dim);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> p(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i)
            p[static_cast<size_t>(i)] = static_cast<int>(rng.uniform_int(degree + 1));
        poly.add_term(MultiIndex(p), MultiIndex::zeros(dim),
                      cd(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
    return poly;
}

}  // namespace

TEST_CASE("kernel evaluation on the disc") {
    const auto table = disc_table(6);

    const TruncatedKernel k0(table, 0);
    const std::vector<cd> z{cd(0.3, 0.1)}, w{cd(-0.2, 0.4)};
    CHECK(k0.eval(z, w).real() == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(k0.eval(z, w).imag() == doctest::Approx(0.0));

    const TruncatedKernel k1(table, 1);
    const std::vector<cd> half{cd(0.5, 0.0)};
    CHECK(k1.eval(half, half).real() == doctest::Approx(1.5 / kPi).epsilon(1e-14));

    CHECK_THROWS_AS(TruncatedKernel(table, 7), TableRangeError);
}

TEST_CASE("kernel is Hermitian in (z, w)") {
    const auto table = disc_table(8);
    const TruncatedKernel kernel(table, 8);
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<cd> z{cd(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))};
        const std::vector<cd> w{cd(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7))};
        const cd a = kernel.eval(z, w);
        const cd b = std::conj(kernel.eval(w, z));
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("kernel reproduces low-degree holomorphic polynomials") {
    // int_disc K_j(z0, w) f(w) dV(w) = f(z0) for deg f <= j: the angular
    // integral is exact by the trapezoid rule on a trigonometric polynomial,
    // the radial one by adaptive quadrature.
    const auto table = disc_table(8);
    const TruncatedKernel kernel(table, 5);

    MonomialPolynomial f(1);
    f.add_term(mi({0}), mi({0}), cd(1.0, 0.0));
    f.add_term(mi({1}), mi({0}), cd(2.0, -0.5));
    f.add_term(mi({3}), mi({0}), cd(0.0, 1.0));

    const std::vector<cd> z0{cd(0.3, 0.2)};
    const int angular = 64;
    auto radial = [&](double r) {
        cd sum = 0.0;
        for (int k = 0; k < angular; ++k) {
            const double theta = 2.0 * kPi * k / angular;
            const std::vector<cd> w{cd(r * std::cos(theta), r * std::sin(theta))};
            sum += kernel.eval(z0, w) * f.evaluate(w);
        }
        return sum * (2.0 * kPi / angular) * r;
    };
    auto re = integrate_adaptive([&](double r) { return radial(r).real(); }, 0.0, 1.0, 1e-11);
    auto im = integrate_adaptive([&](double r) { return radial(r).imag(); }, 0.0, 1.0, 1e-11);
    REQUIRE(re.converged);
    const cd reproduced(re.value, im.value);
    const cd expected = f.evaluate(z0);
    CHECK(std::abs(reproduced - expected) <= 1e-9);
}

TEST_CASE("truncation keeps exactly the low total degrees") {
    MonomialPolynomial f(1);
    f.add_term(mi({0}), mi({0}), 1.0);
    f.add_term(mi({1}), mi({0}), 1.0);
    f.add_term(mi({2}), mi({0}), 1.0);

    const auto t1 = truncate(f, 1);
    CHECK(t1.term_count() == 2);
    CHECK(t1.coefficient(mi({0}), mi({0})) == cd(1.0));
    CHECK(t1.coefficient(mi({1}), mi({0})) == cd(1.0));
    CHECK(t1.coefficient(mi({2}), mi({0})) == cd(0.0));

    const auto t5 = truncate(f, 5);
    CHECK(max_coefficient_difference(t5, f) == 0.0);

    MonomialPolynomial bad(1);
    bad.add_term(mi({0}), mi({1}), 1.0);
    CHECK_THROWS_AS(truncate(bad, 2), std::invalid_argument);
}

TEST_CASE("truncation never increases the weighted norm") {
    const auto table = disc_table(12);
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_holomorphic(rng, 1, 12, 5);
        if (f.empty()) continue;
        const int j = static_cast<int>(rng.uniform_int(13));
        CHECK(norm_sq(table, truncate(f, j)) <= norm_sq(table, f) * (1.0 + 1e-12));
    }
}

TEST_CASE("inner products on the disc") {
    const auto table = disc_table(4);
    const auto z = MonomialPolynomial::holomorphic_monomial(mi({1}));
    const auto one = MonomialPolynomial::holomorphic_monomial(mi({0}));
    const auto zzbar = MonomialPolynomial::monomial(mi({1}), mi({1}));

    CHECK(inner_product(table, z, z).real() == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(std::abs(inner_product(table, z, one)) == 0.0);
    CHECK(inner_product(table, zzbar, one).real() == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("projection acts by the orthogonality rule") {
    const auto table = disc_table(8);

    for (int m : {0, 2, 5}) {
        const auto zm = MonomialPolynomial::holomorphic_monomial(mi({m}));
        CHECK(max_coefficient_difference(project(table, zm), zm) <= 1e-15);
    }

    const auto zbar = MonomialPolynomial::monomial(mi({0}), mi({1}));
    CHECK(project(table, zbar).empty());

    for (int a : {0, 1, 2, 3}) {
        const auto t = disc_table(4, a == 0 ? WeightSpec::constant_one() : WeightSpec::power(a));
        const auto zzbar = MonomialPolynomial::monomial(mi({1}), mi({1}));
        const auto projected = project(t, zzbar);
        REQUIRE(projected.term_count() == 1);
        CHECK(projected.coefficient(mi({0}), mi({0})).real() ==
              doctest::Approx(1.0 / (a + 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("projection agrees with the coefficient-sum route") {
    // Independent route: B f = sum_m <f, z^m> / d_m^2 z^m.
    const auto table = disc_table(14);
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = random_mixed(rng, 1, 6, 5);
        const auto direct = project(table, f);
        MonomialPolynomial expansion(1);
        for (int m = 0; m <= 12; ++m) {
            const auto zm = MonomialPolynomial::holomorphic_monomial(mi({m}));
            const cd c = inner_product(table, f, zm) / table.d2(mi({m}));
            expansion.add_term(mi({m}), mi({0}), c);
        }
        CHECK(max_coefficient_difference(direct, expansion) <= 1e-12);
    }
}

TEST_CASE("projection is idempotent and self-adjoint") {
    const auto table = disc_table(16);
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = random_mixed(rng, 1, 8, 6);
        const auto v = random_mixed(rng, 1, 8, 6);
        const auto bu = project(table, u);
        CHECK(max_coefficient_difference(project(table, bu), bu) <= 1e-12);

        const cd lhs = inner_product(table, bu, v);
        const cd rhs = inner_product(table, u, project(table, v));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("exact derivatives") {
    const auto z2 = MonomialPolynomial::holomorphic_monomial(mi({2}));
    const auto d1 = derivative(z2, mi({1}), mi({0}));
    CHECK(d1.coefficient(mi({1}), mi({0})) == cd(2.0));

    const auto z5 = MonomialPolynomial::holomorphic_monomial(mi({5}));
    const auto d2 = derivative(z5, mi({2}), mi({0}));
    CHECK(d2.coefficient(mi({3}), mi({0})) == cd(20.0));

    CHECK(derivative(z5, mi({0}), mi({1})).empty());
    CHECK(derivative(z5, mi({6}), mi({0})).empty());
}

TEST_CASE("M_beta on monomials") {
    const auto table = disc_table(6);

    // beta = 0 is the identity
    Rng rng(3);
    const auto f = random_holomorphic(rng, 1, 4, 4);
    CHECK(max_coefficient_difference(m_beta_apply(table, mi({0}), f), f) <= 1e-15);

    // alpha = 0, beta = 1 on the unweighted disc: (1/2) (d_0^2/d_1^2) z^2 = z^2
    const auto one = MonomialPolynomial::holomorphic_monomial(mi({0}));
    const auto image = m_beta_apply(table, mi({1}), one);
    REQUIRE(image.term_count() == 1);
    CHECK(image.coefficient(mi({2}), mi({0})).real() == doctest::Approx(1.0).epsilon(1e-13));

    // linearity
    const auto g = random_holomorphic(rng, 1, 3, 3);
    const cd c(0.7, -0.3);
    auto scaled = g;
    scaled *= c;
    auto lhs = m_beta_apply(table, mi({1}), scaled);
    auto rhs = m_beta_apply(table, mi({1}), g);
    rhs *= c;
    CHECK(max_coefficient_difference(lhs, rhs) <= 1e-14);

    CHECK_THROWS_AS(m_beta_apply(table, mi({1}),
                                 MonomialPolynomial::monomial(mi({1}), mi({1}))),
                    std::invalid_argument);
}

TEST_CASE("M_beta norm ratios") {
    const auto table = disc_table(60);
    CHECK(m_beta_norm_ratio(table, mi({3}), mi({0})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m_beta_norm_ratio(table, mi({0}), mi({1})) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    // uniform bound 4^{|beta|} over a degree sweep (binomial factor <= 1)
    for (int b : {1, 2}) {
        for (int alpha = 0; alpha <= 50; ++alpha) {
            CHECK(m_beta_norm_ratio(table, mi({alpha}), mi({b})) <= std::pow(4.0, b) + 1e-9);
        }
    }
}

TEST_CASE("M_beta norm ratio matches the inner-product route") {
    const auto disc = disc_table(24);
    const auto pd = MomentTable::closed_form(RadialDomain::polydisc({1.0, 1.0}),
                                             WeightSpec::power(1), 16);
    auto check_one = [](const MomentTable& table, const MultiIndex& alpha,
                        const MultiIndex& beta) {
        const auto za = MonomialPolynomial::holomorphic_monomial(alpha);
        const auto image = m_beta_apply(table, beta, za);
        const double direct = std::sqrt(norm_sq(table, image) / norm_sq(table, za));
        const double formula = m_beta_norm_ratio(table, alpha, beta);
        CHECK(direct == doctest::Approx(formula).epsilon(1e-10));
    };
    for (int alpha = 0; alpha <= 10; ++alpha) {
        check_one(disc, mi({alpha}), mi({1}));
        check_one(disc, mi({alpha}), mi({3}));
    }
    check_one(pd, mi({2, 1}), mi({1, 1}));
    check_one(pd, mi({0, 4}), mi({2, 0}));
}

TEST_CASE("adjoint identity holds to round-off") {
    const auto disc = disc_table(30);
    for (int alpha = 0; alpha <= 8; ++alpha) {
        for (int b = 0; b <= 2; ++b) {
            CHECK(adjoint_identity_residual(disc, mi({alpha}), mi({b})) <= 1e-12);
        }
    }

    const auto pd = MomentTable::closed_form(RadialDomain::polydisc({1.0, 1.0}),
                                             WeightSpec::constant_one(), 10);
    CHECK(adjoint_identity_residual(pd, mi({2, 1}), mi({1, 1})) <= 1e-12);

    // mismatched monomials: both pairings vanish
    const auto h = MonomialPolynomial::holomorphic_monomial(mi({2}));
    const auto g = MonomialPolynomial::holomorphic_monomial(mi({5}));
    const auto beta = mi({1});
    const cd lhs = inner_product(disc, h, derivative(g, beta, mi({0})));
    const cd rhs = inner_product(disc, derivative(m_beta_apply(disc, beta, h), beta, mi({0})), g);
    CHECK(std::abs(lhs) == 0.0);
    CHECK(std::abs(rhs) == 0.0);
}
