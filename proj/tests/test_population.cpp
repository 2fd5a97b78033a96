#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstring>
#include <numeric>

#include "coordsim/population.hpp"

using namespace coordsim;

namespace {

// Beta(2,5) CDF integrated by hand: 30 * [(1-(1-x)^5)/5 - (1-(1-x)^6)/6].
double beta25_cdf(double x) {
    const double u = 1.0 - x;
    return 30.0 * ((1.0 - std::pow(u, 5)) / 5.0 - (1.0 - std::pow(u, 6)) / 6.0);
}

// Composite Simpson after t = v^2 (smooth at 0 for a > 1/2), normalized by std::beta.
double simpson_cdf(double x, double a, double b) {
    const auto f = [&](double v) {
        return 2.0 * std::pow(v, 2 * a - 1) * std::pow(1 - v * v, b - 1);
    };
    const double hi = std::sqrt(x);
    const int n = 20000;
    const double h = hi / n;
    double sum = f(0) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4 : 2);
    return sum * h / 3 / std::beta(a, b);
}

}  // namespace

TEST_SUITE("population") {

TEST_CASE("incomplete beta endpoints and closed form") {
    CHECK(regularized_incomplete_beta(0.0, 2, 5) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 2, 5) == 1.0);
    CHECK(regularized_incomplete_beta(0.5, 2, 5) == doctest::Approx(0.890625).epsilon(1e-14));
    for (int i = 1; i <= 99; ++i) {
        const double x = i / 100.0;
        CHECK(std::fabs(regularized_incomplete_beta(x, 2, 5) - beta25_cdf(x)) <= 1e-12);
    }
}

TEST_CASE("incomplete beta against quadrature and reference values") {
    // mpmath betainc, 30 digits
    CHECK(regularized_incomplete_beta(0.3, 2.5, 3.7) ==
          doctest::Approx(0.319003175284308698).epsilon(1e-12));
    CHECK(regularized_incomplete_beta(0.9, 5, 2) ==
          doctest::Approx(0.885735000000000044).epsilon(1e-12));
    for (auto [a, b] : {std::pair{2.0, 5.0}, {5.0, 2.0}, {1.5, 1.5}, {3.0, 7.5}}) {
        for (double x : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            CHECK(std::fabs(regularized_incomplete_beta(x, a, b) - simpson_cdf(x, a, b)) <= 1e-9);
        }
    }
}

TEST_CASE("incomplete beta rejects bad arguments") {
    CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 2, 5), std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.1, 2, 5), std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0, 5), std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(std::nan(""), 2, 5), std::domain_error);
}

TEST_CASE("incomplete beta is monotone in x") {
    for (auto [a, b] : {std::pair{2.0, 5.0}, {0.5, 0.5}, {5.0, 2.0}}) {
        double prev = 0.0;
        for (int i = 1; i <= 1000; ++i) {
            const double p = regularized_incomplete_beta(i / 1000.0, a, b);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("beta quantile examples") {
    CHECK(beta_quantile(0.890625, 2, 5) == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(beta_quantile(0.5, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    const double tiny = beta_quantile(1e-10, 2, 5);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-4);
    CHECK_THROWS_AS(beta_quantile(0.0, 2, 5), std::domain_error);
    CHECK_THROWS_AS(beta_quantile(1.0, 2, 5), std::domain_error);
}

TEST_CASE("quantile inverts the CDF") {
    for (auto [a, b] : {std::pair{2.0, 5.0}, {1.0, 1.0}, {5.0, 2.0}}) {
        for (int i = 0; i <= 98; ++i) {
            const double x = 0.01 + i * 0.01;
            const double p = regularized_incomplete_beta(x, a, b);
            if (p <= 0.0 || p >= 1.0) continue;
            // A 1e-12 residual in p allows 1e-12 / density in x.
            const double density = std::pow(x, a - 1) * std::pow(1 - x, b - 1) / std::beta(a, b);
            CHECK(std::fabs(beta_quantile(p, a, b) - x) <= 2e-12 / density + 1e-15);
        }
        for (int i = 1; i < 200; ++i) {
            const double p = i / 200.0;
            CHECK(std::fabs(regularized_incomplete_beta(beta_quantile(p, a, b), a, b) - p) <= 1e-12);
        }
    }
}

TEST_CASE("quantile is strictly increasing in p") {
    double prev = 0.0;
    for (int i = 1; i < 1000; ++i) {
        const double x = beta_quantile(i / 1000.0, 2, 5);
        CHECK(x > prev);
        prev = x;
    }
}

TEST_CASE("manager pools") {
    const auto m20 = make_managers(20, 0.05, 1.0);
    REQUIRE(m20.values.size() == 20);
    CHECK(m20.kind == SkillKind::manager);
    for (int i = 0; i < 20; ++i) CHECK(m20.values[i] == doctest::Approx(0.05 * (i + 1)));
    CHECK(m20.values.back() == 1.0);

    const auto m2 = make_managers(2, 0.05, 1.0);
    CHECK(m2.values == std::vector<double>{0.05, 1.0});

    const auto m3 = make_managers(3, 0.2, 0.8);
    REQUIRE(m3.values.size() == 3);
    CHECK(m3.values[1] == doctest::Approx(0.5));
    CHECK(m3.values[2] == 0.8);

    CHECK(make_managers(1, 0.05, 1.0).values == std::vector<double>{1.0});
    CHECK_THROWS_AS(make_managers(3, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_managers(3, 0.5, 0.5), std::domain_error);
}

TEST_CASE("worker pools") {
    const auto one = make_workers(1, 1, 1);
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == doctest::Approx(0.5));

    const auto three = make_workers(3, 1, 1);
    REQUIRE(three.values.size() == 3);
    CHECK(three.values[0] == doctest::Approx(1.0 / 6));
    CHECK(three.values[1] == doctest::Approx(0.5));
    CHECK(three.values[2] == doctest::Approx(5.0 / 6));

    const auto pool = make_workers(400, 2, 5);
    REQUIRE(pool.values.size() == 400);
    const double mean = std::accumulate(pool.values.begin(), pool.values.end(), 0.0) / 400;
    CHECK(std::fabs(mean - 2.0 / 7.0) <= 0.005);
    for (std::size_t j = 1; j < pool.values.size(); ++j) {
        CHECK(pool.values[j] > pool.values[j - 1]);
    }
    CHECK(pool.values.front() > 0.0);
    CHECK(pool.values.back() < 1.0);
}

TEST_CASE("populations are bitwise deterministic") {
    const auto a = make_workers(400, 2, 5);
    const auto b = make_workers(400, 2, 5);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);

    const auto pop = make_population(ModelParams{});
    CHECK(pop.managers.values.size() == 20);
    CHECK(pop.workers.values.size() == 400);
}

}  // TEST_SUITE
