#include <doctest.h>

#include <cmath>

#include "pssmp/numerics.hpp"

using namespace pssmp;

namespace {
const double kPi = 3.14159265358979323846;
const double kSqrtPi = 1.7724538509055160273;
}  // namespace

TEST_CASE("log_gamma at integer and half-integer points") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("signed gamma on both sides of zero") {
    CHECK(gamma_signed(-0.5) == doctest::Approx(-2.0 * kSqrtPi).epsilon(1e-14));
    CHECK(gamma_signed(2.5) == doctest::Approx(1.5 * 0.5 * kSqrtPi).epsilon(1e-14));
    CHECK(gamma_signed(-1.5) == doctest::Approx(4.0 / 3.0 * kSqrtPi).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_signed(-2.0), pole_error);
    CHECK_THROWS_AS(gamma_signed(0.0), pole_error);
}

TEST_CASE("rgamma vanishes at the poles") {
    CHECK(rgamma(0.0) == 0.0);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(rgamma(-0.5) == doctest::Approx(-1.0 / (2.0 * kSqrtPi)).epsilon(1e-14));
}

TEST_CASE("regularized incomplete beta") {
    CHECK(reg_incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(reg_incomplete_beta(2.5, 0.7, 1.0) == doctest::Approx(1.0));
    CHECK(reg_incomplete_beta(3.3, 3.3, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("quadrature") {
    SUBCASE("smooth integrand") {
        const QuadResult r = integrate_adaptive([](double x) { return x; }, 0.0, 1.0, 1e-10);
        CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("endpoint singularity, using the complement") {
        EndpointIntegrand f = [](double, double, double db) { return 1.0 / std::sqrt(db); };
        CHECK(integrate_adaptive(f, 0.0, 1.0, 1e-10).value == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("infinite range with a power singularity") {
        Integrand f = [](double u) { return std::pow(u, -0.7) / (1.0 + u); };
        const double want = kPi / std::sin(0.3 * kPi);
        CHECK(integrate_adaptive(f, 0.0, INFINITY, 1e-10).value == doctest::Approx(want).epsilon(1e-8));
    }
    SUBCASE("polynomial") {
        const double v = integrate_adaptive([](double x) { return x * x; }, 0.0, 2.0, 1e-12).value;
        CHECK(v == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("series summation") {
    SUBCASE("alternating exponential") {
        SeriesTerm t = [](long n) { return std::pow(-1.0, n) / std::tgamma(n + 1.0); };
        const SeriesValue s = sum_series(t, 1e-12, 100);
        CHECK(s.converged);
        CHECK(s.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
        CHECK(s.tail_bound <= 1e-12);
    }
    SUBCASE("zero terms stop at once") {
        const SeriesValue s = sum_series([](long) { return 0.0; }, 1e-12, 100);
        CHECK(s.converged);
        CHECK(s.value == 0.0);
        CHECK(s.n_terms == 1);
    }
    SUBCASE("divergent series is reported, not hidden") {
        const SeriesValue s = sum_series([](long n) { return std::pow(2.0, n); }, 1e-12, 50);
        CHECK_FALSE(s.converged);
    }
}

TEST_CASE("log-log slope recovers a pure power") {
    double x[8], y[8];
    for (int i = 0; i < 8; ++i) {
        x[i] = std::pow(10.0, 1.0 + 0.25 * i);
        y[i] = 3.0 * std::pow(x[i], -2.0);
    }
    CHECK(loglog_slope(x, y, 8) == doctest::Approx(-2.0).epsilon(1e-13));
}
