#include <doctest.h>

#include <cmath>

#include "pssmp/numerics.hpp"
#include "pssmp/scale.hpp"

using namespace pssmp;

namespace {

SpectralCase make(SpectralCaseKind k, double alpha = 1.5, double m = 0.8) {
    SpectralCase s;
    s.which = k;
    s.alpha = alpha;
    s.m = m;
    s.q_ladder = 0.5;
    return s;
}

}  // namespace

TEST_CASE("mean and subordinator scale") {
    const double a = 1.5;
    CHECK(subordinator_c(a, 2.0) == doctest::Approx(2.0 * std::tgamma(2 - a) / (a * (a - 1))));
    CHECK(default_m(a, 2.0) == doctest::Approx(subordinator_c(a, 2.0) * std::tgamma(a)));
}

TEST_CASE("Laplace exponents") {
    const SpectralCase s = make(SpectralCaseKind::UpNeg);
    CHECK(psi_up(s, 0.0) == 0.0);
    CHECK(psi_up(s, 1.0) == doctest::Approx(s.m * s.alpha).epsilon(1e-14));
    const double h = 1e-6;
    CHECK((4 * psi_up(s, h) - psi_up(s, 2 * h)) / (2 * h) == doctest::Approx(s.m).epsilon(1e-4));
    CHECK(psi_down(s, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(psi_down(s, 2.0) == doctest::Approx(s.m * s.alpha).epsilon(1e-14));
    CHECK(psi_down(s, 0.0) == doctest::Approx(0.0));
    CHECK((psi_down(s, h) - psi_down(s, 0.0)) / h < 0.0);
    for (double th : {0.3, 1.7, 4.0}) CHECK(psi_down(s, th + 1.0) == doctest::Approx(psi_up(s, th)).epsilon(1e-14));
}

TEST_CASE("scale functions") {
    const SpectralCase up = make(SpectralCaseKind::UpNeg);
    const SpectralCase dn = make(SpectralCaseKind::DownNeg);
    CHECK(scale_fn(up, 0.0) == 0.0);
    CHECK(scale_fn(dn, 0.0) == 0.0);
    CHECK(scale_fn(up, 60.0) == doctest::Approx(1.0 / up.m).epsilon(1e-12));
    for (double x : {0.1, 1.0, 3.0}) CHECK(scale_fn(dn, x) == doctest::Approx(std::exp(x) * scale_fn(up, x)).epsilon(1e-13));
    for (double th : {2.0, 4.0, 8.0}) {
        const double lt = integrate_adaptive([&](double x) { return std::exp(-th * x) * scale_fn(up, x); }, 0.0,
                                             INFINITY, 1e-12).value;
        CHECK(lt == doctest::Approx(1.0 / psi_up(up, th)).epsilon(1e-8));
    }
}

TEST_CASE("ruin probabilities") {
    const SpectralCase up = make(SpectralCaseKind::UpNeg);
    const SpectralCase dn = make(SpectralCaseKind::DownNeg);
    CHECK(ruin_probability(up, 1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    for (double y : {0.2, 1.0, 4.0})
        CHECK(ruin_probability(dn, 0.7, y) / ruin_probability(up, 0.7, y) ==
              doctest::Approx(std::exp(-y)).epsilon(1e-12));
}

TEST_CASE("triple law normalization") {
    const SpectralCase s = make(SpectralCaseKind::UpNeg);
    const double v = -0.6;
    const double kr = triple_law_K_reduced(s, v);
    CHECK(kr > 0.0);
    CHECK(triple_law_K(s, v, 1e-4) == doctest::Approx(kr).epsilon(1e-4));
    TripleLawPoint pt{v, 0.3, 0.2, 0.1};
    CHECK(triple_law_density(s, pt, kr) == doctest::Approx(triple_law_kernel(s, pt) / kr).epsilon(1e-14));
}

TEST_CASE("case validation") {
    SpectralCase s = make(SpectralCaseKind::DownNeg);
    s.q_ladder = 0.0;
    CHECK_THROWS_AS(triple_law_K_reduced(s, -0.5), domain_error);
    CHECK_THROWS_AS(validate_case(make(SpectralCaseKind::UpNeg, 2.5)), domain_error);
    CHECK_THROWS_AS(validate_case(make(SpectralCaseKind::UpNeg, 1.5, -1.0)), domain_error);
}
