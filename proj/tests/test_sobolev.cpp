#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/operators.hpp"
#include "bergman/rng.hpp"
#include "bergman/sobolev.hpp"

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

}  // namespace

TEST_CASE("Sobolev norms on the disc match hand values") {
    const auto table = disc_table(6);

    const auto one = MonomialPolynomial::holomorphic_monomial(mi({0}));
    CHECK(sobolev_norm_sq(table, one, 0) == doctest::Approx(kPi).epsilon(1e-14));

    // f = z, k = 1: ||z||^2 + ||1||^2 (the zbar derivative vanishes)
    const auto z = MonomialPolynomial::holomorphic_monomial(mi({1}));
    CHECK(sobolev_norm_sq(table, z, 1) == doctest::Approx(kPi / 2 + kPi).epsilon(1e-14));
    CHECK(sobolev_norm(table, z, 1) == doctest::Approx(std::sqrt(kPi / 2 + kPi)).epsilon(1e-14));
}

TEST_CASE("k = 0 reduces to the weighted inner product") {
    const auto table = disc_table(12);
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = random_mixed(rng, 1, 6, 5);
        CHECK(sobolev_norm_sq(table, f, 0) ==
              doctest::Approx(norm_sq(table, f)).epsilon(1e-13));
    }
}

TEST_CASE("Sobolev norm is monotone in the order k") {
    const auto table = disc_table(16);
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_mixed(rng, 1, 6, 4);
        double prev = 0.0;
        for (int k = 0; k <= 3; ++k) {
            const double cur = sobolev_norm_sq(table, f, k);
            CHECK(cur >= prev * (1.0 - 1e-14));
            prev = cur;
        }
    }
}

TEST_CASE("projection-derivative norms on the disc") {
    const auto table = disc_table(8);

    const auto zbar = MonomialPolynomial::monomial(mi({0}), mi({1}));
    CHECK(projection_derivative_norm_sq(table, zbar, mi({1})) == 0.0);

    for (int a : {0, 1, 2}) {
        const auto t = disc_table(8, a == 0 ? WeightSpec::constant_one() : WeightSpec::power(a));
        const auto zzbar = MonomialPolynomial::monomial(mi({1}), mi({1}));
        // projection is the constant 1/(a+2); any derivative kills it
        CHECK(projection_derivative_norm_sq(t, zzbar, mi({1})) == 0.0);
    }

    // f = z^2 zbar: B f = (d_2^2/d_1^2) z = (2/3) z; d/dz -> 2/3; norm^2 = (4/9) pi
    const auto f = MonomialPolynomial::monomial(mi({2}), mi({1}));
    CHECK(projection_derivative_norm_sq(table, f, mi({1})) ==
          doctest::Approx(4.0 / 9.0 * kPi).epsilon(1e-13));
}

TEST_CASE("holomorphic inputs: projection is the identity in the ratio") {
    const auto table = disc_table(20);
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        MonomialPolynomial f(1);
        for (int t = 0; t < 4; ++t)
            f.add_term(mi({static_cast<int>(rng.uniform_int(9))}), mi({0}),
                       cd(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        if (f.empty()) continue;
        const auto direct = derivative(f, mi({2}), mi({0}));
        const double via_projection = projection_derivative_norm_sq(table, f, mi({2}));
        const double straight = direct.empty() ? 0.0 : norm_sq(table, direct);
        CHECK(via_projection == doctest::Approx(straight).epsilon(1e-12));
    }
}

TEST_CASE("boundedness experiment matches a brute-force oracle on the disc") {
    // Closed moments pi/(m+1) make every ratio a small rational expression;
    // recompute the per-degree sups straight from the generic operations.
    const auto table = disc_table(24);
    const int k = 1, input_degree = 12;
    const MultiIndex beta = mi({1});
    const auto report =
        boundedness_experiment(table, k, beta, input_degree, InputFamily::PureMonomials);

    REQUIRE(report.per_degree_sup.size() == static_cast<size_t>(input_degree + 1));
    for (int d = 0; d <= input_degree; ++d) {
        double sup = 0.0;
        for (int p = 0; p <= d; ++p) {
            for (int q = 0; q <= d; ++q) {
                if (std::max(p, q) != d) continue;
                const auto f = MonomialPolynomial::monomial(mi({p}), mi({q}));
                const double den = sobolev_norm_sq(table, f, k);
                if (den <= 0.0) continue;
                sup = std::max(sup, projection_derivative_norm_sq(table, f, beta) / den);
            }
        }
        CHECK(report.per_degree_sup[static_cast<size_t>(d)].second ==
              doctest::Approx(sup).epsilon(1e-12));
    }
    CHECK(report.trend == Trend::Plateau);
    CHECK(report.overall_sup < 1.0);
}

TEST_CASE("fast path equals the generic path on a two-dimensional fixture") {
    const auto table =
        MomentTable::closed_form(RadialDomain::polydisc({1.0, 1.0}), WeightSpec::power(1), 8);
    const int k = 2, input_degree = 4;
    const MultiIndex beta = mi({1, 0});
    const auto report =
        boundedness_experiment(table, k, beta, input_degree, InputFamily::PureMonomials);

    const auto inputs = indices_with_total_at_most(2, input_degree);
    std::vector<double> sup(static_cast<size_t>(input_degree + 1), 0.0);
    for (const auto& p : inputs) {
        for (const auto& q : inputs) {
            const auto f = MonomialPolynomial::monomial(p, q);
            const double den = sobolev_norm_sq(table, f, k);
            if (den <= 0.0) continue;
            const double ratio = projection_derivative_norm_sq(table, f, beta) / den;
            const int d = std::max(p.total(), q.total());
            sup[static_cast<size_t>(d)] = std::max(sup[static_cast<size_t>(d)], ratio);
        }
    }
    REQUIRE(report.per_degree_sup.size() == sup.size());
    for (size_t d = 0; d < sup.size(); ++d) {
        CHECK(report.per_degree_sup[d].second == doctest::Approx(sup[d]).epsilon(1e-12));
    }
}

TEST_CASE("identity configuration scores exactly 1 on holomorphic inputs") {
    const auto table = disc_table(16);
    const auto report = boundedness_experiment(table, 0, mi({0}), 8, InputFamily::PureMonomials);
    // mixed inputs never exceed the holomorphic ratio 1
    CHECK(report.overall_sup == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& [d, sup] : report.per_degree_sup)
        CHECK(sup == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(report.trend == Trend::Plateau);
}

TEST_CASE("anti-holomorphic inputs have vanishing numerators") {
    const auto table = disc_table(12);
    for (int q = 1; q <= 6; ++q) {
        const auto f = MonomialPolynomial::monomial(mi({0}), mi({q}));
        CHECK(projection_derivative_norm_sq(table, f, mi({1})) == 0.0);
        CHECK(projection_derivative_norm_sq(table, f, mi({0})) == 0.0);
    }
}

TEST_CASE("ratios are invariant under coefficient scaling") {
    const auto table = disc_table(16);
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_mixed(rng, 1, 7, 4);
        if (f.empty()) continue;
        const double r1 = projection_derivative_norm_sq(table, f, mi({1})) /
                          sobolev_norm_sq(table, f, 1);
        auto g = f;
        g *= cd(0.0, 37.5);
        const double r2 = projection_derivative_norm_sq(table, g, mi({1})) /
                          sobolev_norm_sq(table, g, 1);
        CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
    }
}

TEST_CASE("random-mixed family runs deterministically") {
    const auto table = disc_table(16);
    const auto r1 = boundedness_experiment(table, 1, mi({1}), 8, InputFamily::RandomMixed, 99, 8);
    const auto r2 = boundedness_experiment(table, 1, mi({1}), 8, InputFamily::RandomMixed, 99, 8);
    REQUIRE(r1.per_degree_sup.size() == r2.per_degree_sup.size());
    for (size_t i = 0; i < r1.per_degree_sup.size(); ++i)
        CHECK(r1.per_degree_sup[i].second == r2.per_degree_sup[i].second);
    CHECK(r1.trend == Trend::Plateau);
}

TEST_CASE("input degree must fit the table") {
    const auto table = disc_table(10);
    CHECK_THROWS_AS(boundedness_experiment(table, 1, mi({1}), 6, InputFamily::PureMonomials),
                    TableRangeError);
    CHECK_THROWS_AS(boundedness_experiment(table, 0, mi({1}), 5, InputFamily::PureMonomials),
                    std::invalid_argument);  // |beta| > k
}
