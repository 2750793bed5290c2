#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pssmp/hitting.hpp"
#include "pssmp/numerics.hpp"

using namespace pssmp;

namespace {

// Simple random walk on a grid of [lo, hi] with the given boundary values:
// the harmonic function of the Brownian limit, by a tridiagonal solve.
double grid_walk(double lo, double f_lo, double hi, double f_hi, double x, int n = 2000) {
    // unknowns f[1..n-1]: 2 f[i] - f[i-1] - f[i+1] = 0, Thomas algorithm
    std::vector<double> cp(n, 0.0), dp(n, 0.0), f(n + 1, 0.0);
    f[0] = f_lo;
    f[n] = f_hi;
    for (int i = 1; i < n; ++i) {
        const double r = i == 1 ? f_lo : 0.0;  // f_hi enters through the back substitution
        const double m = 2.0 + (i > 1 ? cp[i - 1] : 0.0);
        cp[i] = -1.0 / m;
        dp[i] = (r + (i > 1 ? dp[i - 1] : 0.0)) / m;
    }
    for (int i = n - 1; i >= 1; --i) f[i] = dp[i] - cp[i] * f[i + 1];
    const double pos = (x - lo) / (hi - lo) * n;
    const int k = std::min(static_cast<int>(pos), n - 1);
    return f[k] + (pos - k) * (f[k + 1] - f[k]);
}

}  // namespace

TEST_CASE("two routes agree and give probabilities") {
    for (double alpha : {1.2, 1.5, 1.8})
        for (double x : {0.3, 1.0, 1.6, 3.0}) {
            const HitQuery q{alpha, x, 0.5, 2.0};
            const double m = hit_matrix_method(q);
            CHECK(m >= 0.0);
            CHECK(m <= 1.0);
            CHECK(m == doctest::Approx(hit_closed_ratio(q)).epsilon(1e-10));
            const HitQuery swap{alpha, x, 2.0, 0.5};
            CHECK(m + hit_matrix_method(swap) <= 1.0 + 1e-12);
        }
}

TEST_CASE("invariance under rescaling of the resolvent") {
    const HitQuery q{1.5, 1.3, 0.5, 2.0};
    const Resolvent u = default_resolvent(1.5);
    const Resolvent u2 = [&](double x, double y) { return 3.7 * u(x, y); };
    CHECK(hit_matrix_method(q, u2) == doctest::Approx(hit_matrix_method(q, u)).epsilon(1e-14));
    CHECK(hit_matrix_method(q, [&](double x, double y) { return 10.0 * u(x, y); }) ==
          doctest::Approx(hit_matrix_method(q, u)).epsilon(1e-14));
}

TEST_CASE("start next to the target") {
    CHECK(hit_matrix_method({1.5, 0.5 * (1 + 1e-9), 0.5, 2.0}) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("Brownian limit against a random-walk oracle") {
    const double alpha = 1.999;
    SUBCASE("between the targets") {
        const double want = grid_walk(0.5, 1.0, 2.0, 0.0, 1.1);
        CHECK(std::fabs(hit_matrix_method({alpha, 1.1, 0.5, 2.0}) - want) < 1e-2);
    }
    SUBCASE("below both targets, killed at zero") {
        const double want = grid_walk(0.0, 0.0, 0.5, 1.0, 0.3);
        CHECK(std::fabs(hit_matrix_method({alpha, 0.3, 0.5, 2.0}) - want) < 1e-2);
    }
}

TEST_CASE("conditioned processes in log scale") {
    for (double v : {-0.2, -1.0, -2.0}) {
        const double up = hit_prob_lamperti(Kind::Up, 1.5, v, 0.7);
        const double dn = hit_prob_lamperti(Kind::Down, 1.5, v, 0.7);
        CHECK(dn / up == doctest::Approx(std::exp(-v)).epsilon(1e-12));
    }
    CHECK(hit_prob_lamperti(Kind::Up, 1.5, -1e-9, 0.7) == doctest::Approx(1.0).epsilon(1e-3));
    double prev = 2.0;
    for (double v = -0.1; v > -3.0; v -= 0.3) {
        const double f = hit_prob_lamperti(Kind::Up, 1.5, v, 0.7);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("invalid queries") {
    CHECK_THROWS_AS(validate_hit({1.5, 1.0, 0.5, 0.5}), domain_error);
    CHECK_THROWS_AS(validate_hit({0.8, 1.0, 0.5, 2.0}), domain_error);
    CHECK_THROWS_AS(hit_prob_lamperti(Kind::Star, 1.5, -1.0, 1.0), domain_error);
}
