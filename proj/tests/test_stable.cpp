#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pssmp/numerics.hpp"
#include "pssmp/stable.hpp"

using namespace pssmp;

namespace {

std::vector<double> draws(const StableParams& p, double dt, std::uint64_t seed, int n) {
    std::vector<double> v(n);
    CounterStream s(seed, 0);
    StableSampler smp(p);
    for (double& x : v) x = smp.draw(dt, s);
    return v;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::fabs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    return v[static_cast<size_t>(q * (v.size() - 1))];
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(validate_basic({1.5, 0.5, 1, 1}));
    CHECK_THROWS_AS(validate_basic({2.5, 0.5, 1, 1}), domain_error);
    CHECK_THROWS_AS(validate_basic({1.5, 1.2, 1, 1}), domain_error);
    CHECK(is_two_sided({1.5, 0.5, 1, 1}));
    CHECK(is_spectrally_negative({1.5, 1.0 - 1.0 / 1.5, 1, 0}));
    CHECK(is_spectrally_positive({1.5, 1.0 / 1.5, 0, 1}));
    CHECK_THROWS_AS(require_two_sided({1.5, 0.5, 1, 0}), domain_error);
}

TEST_CASE("Rogozin overshoot law") {
    const StableParams p{1.5, 0.5, 1, 1};
    SUBCASE("density integrates to the upward exit probability") {
        for (double rho : {0.3, 0.5, 0.7})
            for (double alpha : {0.8, 1.2, 1.5, 1.8})
                for (double xa : {0.1, 0.5, 0.9}) {
                    const StableParams q{alpha, rho, 1, 1};
                    if (!is_two_sided(q)) continue;
                    const double mass = integrate_adaptive(
                        [&](double y) { return rogozin_overshoot_density(q, 1.0, xa, y); }, 0.0, INFINITY, 1e-10).value;
                    CHECK(mass == doctest::Approx(exit_up_probability(q, 1.0, xa)).epsilon(1e-6));
                }
    }
    SUBCASE("symmetric law started half way") { CHECK(exit_up_probability(p, 1.0, 0.5) == doctest::Approx(0.5)); }
    SUBCASE("spectrally positive limit against the classical display") {
        const double alpha = 1.5;
        const StableParams q{alpha, 1.0 / alpha - 1e-10, 1, 1};
        auto classical = [&](double a, double x, double y) {
            return std::sin(M_PI * (alpha - 1)) / M_PI * std::pow((a - x) / (x * y), alpha - 1) / ((y + a) * (y + a - x));
        };
        for (double y : {0.25, 1.0, 4.0}) {
            CHECK(rogozin_overshoot_density(q, 2.0, 1.0, y) == doctest::Approx(classical(2.0, 1.0, y)).epsilon(1e-8));
            // away from x = 1 the display is off by x^alpha
            CHECK(rogozin_overshoot_density(q, 1.0, 0.5, y) / classical(1.0, 0.5, y) ==
                  doctest::Approx(std::pow(0.5, alpha)).epsilon(1e-8));
        }
    }
    SUBCASE("start next to the barrier") { CHECK(exit_up_probability(p, 1.0, 1.0 - 1e-12) > 0.9999); }
}

TEST_CASE("killed resolvent") {
    const double alpha = 1.5;
    CHECK(killed_resolvent_u(alpha, 0.7, 2.3) == doctest::Approx(killed_resolvent_u(alpha, 2.3, 0.7)).epsilon(1e-13));
    const double lam = 3.0;
    CHECK(killed_resolvent_u(alpha, lam * 0.7, lam * 2.3) ==
          doctest::Approx(std::pow(lam, alpha - 1.0) * killed_resolvent_u(alpha, 0.7, 2.3)).epsilon(1e-12));
    // the diagonal value against a limit along off-diagonal points
    const double x = 1.3;
    const double e1 = 1e-3, e2 = 5e-4;
    const double u1 = 0.5 * (killed_resolvent_u(alpha, x, x * (1 + e1)) + killed_resolvent_u(alpha, x, x * (1 - e1)));
    const double u2 = 0.5 * (killed_resolvent_u(alpha, x, x * (1 + e2)) + killed_resolvent_u(alpha, x, x * (1 - e2)));
    const double extrap = u2 + (u2 - u1) * std::pow(e2, alpha - 1) / (std::pow(e1, alpha - 1) - std::pow(e2, alpha - 1));
    CHECK(killed_resolvent_u(alpha, x, x) == doctest::Approx(extrap).epsilon(1e-6));
}

TEST_CASE("counter streams are pure functions of key and counter") {
    CounterStream a(42, 7), b(42, 7), c(42, 8);
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    a.seek(0);
    CHECK(a.next_u64() == x);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("stable sampler") {
    const int n = 1000000;
    SUBCASE("sign balance matches rho") {
        for (double rho : {0.4, 0.5, 0.6}) {
            const StableParams p{1.5, rho, 1, 1};
            const auto v = draws(p, 1.0, 3, n);
            double s = 0.0;
            for (double x : v) s += (x > 0) - (x < 0);
            const double mean = s / n, want = 1.0 - 2.0 * rho;
            CHECK(std::fabs(mean - want) < 3.0 * std::sqrt((1.0 - want * want) / n));
        }
    }
    SUBCASE("self-similarity") {
        const StableParams p{1.5, 0.4, 1, 1};
        const double dt = 0.01;
        auto a = draws(p, dt, 11, 100000);
        auto b = draws(p, 1.0, 12, 100000);
        for (double& x : b) x *= std::pow(dt, 1.0 / p.alpha);
        CHECK(two_sample_ks(a, b) < 0.01);
    }
    SUBCASE("symmetric law has median zero") {
        const auto v = draws({1.2, 0.5, 1, 1}, 1.0, 5, 200000);
        // the order statistic at 1/2 has density about f(0) sqrt(4n)
        CHECK(std::fabs(quantile(v, 0.5)) < 3.0 * 0.5 / std::sqrt(double(v.size())) / 0.2);
    }
    SUBCASE("upper tail index") {
        const auto v = draws({1.5, 0.5, 1, 1}, 1.0, 9, n);
        const double q1 = quantile(v, 0.99), q2 = quantile(v, 0.999);
        CHECK(std::log(10.0) / std::log(q2 / q1) == doctest::Approx(1.5).epsilon(0.07));
    }
}
