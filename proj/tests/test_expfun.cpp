#include <doctest.h>

#include <cmath>
#include <complex>

#include "pssmp/expfun.hpp"

using namespace pssmp;

namespace {

// Fixed Talbot inversion of E exp(-s I) = exp(-(s/c)^{1/alpha}).
double talbot_density(double alpha, double c, double x, int M = 24) {
    using cd = std::complex<double>;
    auto F = [&](cd s) { return std::exp(-std::pow(s / c, 1.0 / alpha)); };
    const double r = 2.0 * M / (5.0 * x);
    double acc = 0.5 * std::exp(r * x) * F(cd(r)).real();
    for (int k = 1; k < M; ++k) {
        const double th = k * M_PI / M;
        const double cot = 1.0 / std::tan(th);
        const cd s = r * th * cd(cot, 1.0);
        const double sigma = th + (th * cot - 1.0) * cot;
        acc += (std::exp(x * s) * F(s) * cd(1.0, sigma)).real();
    }
    return r / M * acc;
}

double integrate(const Integrand& f, double a, double b, double tol = 1e-11) {
    return integrate_adaptive(f, a, b, tol).value;
}

}  // namespace

TEST_CASE("negative moments and Laplace transform") {
    const ExpFunctionalModel md = make_up_model(1.5, 1.0);
    const double a = md.alpha, c = md.c;
    CHECK(md.m == doctest::Approx(c * std::tgamma(a)).epsilon(1e-14));
    CHECK(neg_moment_I(md, 1) == doctest::Approx(a * md.m).epsilon(1e-14));
    const double q1 = integrate([&](double l) { return std::exp(-std::pow(l / c, 1 / a)); }, 0, INFINITY);
    CHECK(neg_moment_I(md, 1) == doctest::Approx(q1).epsilon(1e-9));
    const double q2 = integrate([&](double l) { return l * std::exp(-std::pow(l / c, 1 / a)); }, 0, INFINITY);
    CHECK(neg_moment_I(md, 2) == doctest::Approx(q2).epsilon(1e-9));
    CHECK(neg_moment_I(md, 2) == doctest::Approx(a * c * c * std::tgamma(2 * a)).epsilon(1e-13));
    CHECK(laplace_I(md, 0.0) == 1.0);
    CHECK(laplace_I(md, c) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("density of the exponential functional") {
    for (double c : {1.0, 2.5}) {
        const ExpFunctionalModel md = make_up_model_from_c(1.5, c);
        CAPTURE(c);
        SUBCASE("against numerical Laplace inversion") {
            for (double x : {0.2, 1.0, 3.0}) CHECK(density_I(md, x).value == doctest::Approx(talbot_density(1.5, c, x)).epsilon(1e-7));
        }
        SUBCASE("series and integral representations agree") {
            for (double x : {0.5, 2.0, 10.0}) {
                const SeriesValue s = density_I_series(md, x);
                if (!s.converged) continue;
                CHECK(s.value == doctest::Approx(density_I_integral(md, x).value).epsilon(1e-9));
            }
        }
        SUBCASE("mass, sign and transform") {
            auto f = [&](double x) { return density_I(md, x).value; };
            CHECK(integrate(f, 0.0, INFINITY, 1e-10) == doctest::Approx(1.0).epsilon(1e-6));
            for (double x = 0.05; x <= 50.0; x *= 1.3) CHECK(f(x) >= 0.0);
            for (double lam : {0.5 * c, c, 2.0 * c}) {
                const double lt = integrate([&](double x) { return std::exp(-lam * x) * f(x); }, 0.0, INFINITY, 1e-10);
                CHECK(lt == doctest::Approx(laplace_I(md, lam)).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("upper tail follows the leading series term") {
    const ExpFunctionalModel md = make_up_model_from_c(1.5, 1.0);
    const double x = 1e4;
    const double lead = std::pow(x, -1.0 / 1.5) / std::tgamma(1.0 - 1.0 / 1.5);
    CHECK(upper_tail_I(md, x).value == doctest::Approx(lead).epsilon(0.01));
    const TailFit fit = tail_exponent_check(md, TailWhich::UpRight);
    CHECK(fit.expected == doctest::Approx(-1.5));
    CHECK(fit.slope == doctest::Approx(-1.0 / 1.5).epsilon(0.01));
}

TEST_CASE("entrance law") {
    const ExpFunctionalModel md = make_up_model_from_c(1.5, 1.0);
    for (int k = 1; k <= 3; ++k) {
        CHECK(entrance_moment(md, k, 2.0) == doctest::Approx(std::pow(2.0, k) * entrance_moment(md, k, 1.0)).epsilon(1e-13));
        CHECK(entrance_moment(md, k, 1.0) ==
              doctest::Approx(neg_moment_I(md, k + 1) / (md.alpha * md.m)).epsilon(1e-13));
    }
    const double a = md.alpha;
    CHECK(entrance_moment(md, 1, 1.0) == doctest::Approx(md.m * std::tgamma(2 * a) / std::pow(std::tgamma(a), 2)).epsilon(1e-12));
    for (double t : {1.0, 2.5}) {
        auto p = [&](double x) { return entrance_density(md, t, x).value; };
        CHECK(integrate(p, 0.0, INFINITY, 1e-10) == doctest::Approx(1.0).epsilon(1e-6));
        const double m1 = integrate([&](double x) { return x * p(x); }, 0.0, INFINITY, 1e-10);
        CHECK(m1 == doctest::Approx(entrance_moment(md, 1, t)).epsilon(1e-6));
    }
}

TEST_CASE("exponential functional of the killed process") {
    const ExpFunctionalModel md = make_star_model_from_c(1.5, 1.0);
    auto p = [&](double x) { return density_I_star(md, x).value; };
    CHECK(integrate(p, 0.0, INFINITY, 1e-9) == doctest::Approx(1.0).epsilon(1e-5));
    for (double y = 0.05; y < 20.0; y *= 1.5) CHECK(sup_density(md, y).value >= 0.0);
    const TailFit fit = tail_exponent_check(md, TailWhich::StarLeft);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK(cdf_I_star(md, 1e-4) / 1e-4 == doctest::Approx(star_left_constant(md)).epsilon(0.05));
}

TEST_CASE("invalid models") {
    CHECK_THROWS_AS(make_up_model(0.8, 1.0), domain_error);
    CHECK_THROWS_AS(density_I(make_up_model(1.5, 1.0), -1.0), domain_error);
    CHECK_THROWS_AS(tail_exponent_check(make_up_model(1.5, 1.0), TailWhich::UpLeft), domain_error);
}
