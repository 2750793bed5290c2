#include "pssmp/expfun.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "pssmp/scale.hpp"

namespace pssmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxSeriesTerms = 400;

void check_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw domain_error("exponential functional: alpha must lie in (1,2)");
}

void require_case(const ExpFunctionalModel& md, ExpFunCase c) {
    check_alpha(md.alpha);
    if (!(md.c > 0.0)) throw domain_error("exponential functional: c must be positive");
    if (md.which != c) throw domain_error("exponential functional: operation not defined for this case");
}

// Tail bound for sums whose envelope e(n) has eventually decreasing ratios.
double ratio_tail(const std::function<double(long)>& env, long n) {
    const double e1 = env(n + 1), e2 = env(n + 2), e3 = env(n + 3);
    if (e1 == 0.0) return 0.0;
    const double r1 = e2 / e1, r2 = e3 / e2;
    if (r1 < 1.0 && r2 <= r1) return e1 / (1.0 - r1);
    return kInf;
}

// Sum over n >= 1 of Gamma(g0 + n/alpha) sin(pi n/alpha) (-y)^n / n!, with an
// absolute tolerance on the sum.
SeriesValue zolotarev_sum(double alpha, double g0, double y, double tol) {
    const double ly = std::log(y);
    auto env = [&](long n) {
        return std::exp(log_gamma(g0 + n / alpha) + n * ly - log_gamma(n + 1.0));
    };
    auto term = [&](long n) {
        const double s = boost::math::sin_pi(n / alpha);
        return ((n % 2) ? -s : s) * env(n);
    };
    auto tail = [&](long n, double) { return ratio_tail(env, n); };
    return sum_series(term, tol, kMaxSeriesTerms, tail, 1);
}

SeriesValue scaled(SeriesValue s, double f) {
    s.value *= f;
    s.tail_bound *= std::fabs(f);
    return s;
}

}  // namespace

ExpFunctionalModel make_up_model(double alpha, double c_minus) {
    return make_up_model_from_c(alpha, subordinator_c(alpha, c_minus));
}

ExpFunctionalModel make_up_model_from_c(double alpha, double c) {
    check_alpha(alpha);
    if (!(c > 0.0)) throw domain_error("c must be positive");
    return {ExpFunCase::UpSpectrallyNegative, alpha, c, c * gamma_signed(alpha)};
}

ExpFunctionalModel make_star_model(double alpha, double jump_weight) {
    return make_star_model_from_c(alpha, subordinator_c(alpha, jump_weight));
}

ExpFunctionalModel make_star_model_from_c(double alpha, double c) {
    check_alpha(alpha);
    if (!(c > 0.0)) throw domain_error("c must be positive");
    return {ExpFunCase::StarSpectrallyPositive, alpha, c, 0.0};
}

double neg_moment_I(const ExpFunctionalModel& md, int k) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (k < 1) throw domain_error("neg_moment_I: k must be >= 1");
    const double a = md.alpha;
    return a * std::exp(k * std::log(md.m) + log_gamma(k * a) - k * log_gamma(a) - log_gamma(k));
}

double laplace_I(const ExpFunctionalModel& md, double lambda) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(lambda >= 0.0)) throw domain_error("laplace_I: lambda must be nonnegative");
    return std::exp(-std::pow(lambda / md.c, 1.0 / md.alpha));
}

SeriesValue density_I_series(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(x > 0.0)) throw domain_error("density_I: x must be positive");
    const double y = std::pow(md.c * x, -1.0 / md.alpha);
    const double pre = -1.0 / (M_PI * x);
    return scaled(zolotarev_sum(md.alpha, 1.0, y, tol / std::fabs(pre)), pre);
}

SeriesValue density_I_integral(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(x > 0.0)) throw domain_error("density_I: x must be positive");
    // standard subordinator Phi(l) = l^b evaluated at z = c x, Jacobian c
    const double b = 1.0 / md.alpha;
    const double z = md.c * x;
    const double Z = std::pow(z, -b / (1.0 - b));
    const double logA0 = (b * std::log(b) + (1.0 - b) * std::log(1.0 - b)) / (1.0 - b);
    const double A0 = std::exp(logA0);
    EndpointIntegrand f = [&](double u, double, double uc) {
        using boost::math::sin_pi;
        const double sp = u < 0.5 ? sin_pi(u) : sin_pi(uc);
        const double lA = (b * std::log(sin_pi(b * u)) + (1.0 - b) * std::log(sin_pi((1.0 - b) * u)) -
                           std::log(sp)) / (1.0 - b);
        const double A = std::exp(lA);
        const double g = A * std::exp(-(A - A0) * Z);
        return std::isfinite(g) ? g : 0.0;
    };
    const double pre = md.c * b / (1.0 - b) * std::pow(z, -1.0 / (1.0 - b)) * std::exp(-A0 * Z);
    QuadResult q = integrate_adaptive(f, 0.0, 1.0, 1e-13);
    SeriesValue r{pre * q.value, pre * q.error_estimate, q.evaluations, true};
    r.converged = r.tail_bound <= tol || r.tail_bound <= 1e-12 * std::fabs(r.value);
    return r;
}

SeriesValue density_I(const ExpFunctionalModel& md, double x, double tol) {
    SeriesValue s = density_I_series(md, x, tol);
    if (s.converged) return s;
    SeriesValue k = density_I_integral(md, x, tol);
    return k.tail_bound <= s.tail_bound || !std::isfinite(s.value) ? k : s;
}

SeriesValue upper_tail_I(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(x > 0.0)) throw domain_error("upper_tail_I: x must be positive");
    const double y = std::pow(md.c * x, -1.0 / md.alpha);
    return scaled(zolotarev_sum(md.alpha, 0.0, y, tol * M_PI), -1.0 / M_PI);
}

double entrance_moment(const ExpFunctionalModel& md, int k, double t) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (k < 1) throw domain_error("entrance_moment: k must be >= 1");
    if (!(t > 0.0)) throw domain_error("entrance_moment: t must be positive");
    const double a = md.alpha;
    return std::exp(k * std::log(md.m * t) + log_gamma(a * (k + 1)) - (k + 1) * log_gamma(a) -
                    log_gamma(k + 1.0));
}

SeriesValue entrance_density(const ExpFunctionalModel& md, double t, double x, double tol) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(t > 0.0) || !(x > 0.0)) throw domain_error("entrance_density: t and x must be positive");
    const double f = 1.0 / (md.alpha * md.m * x);
    return scaled(density_I(md, t / x, tol / f), f);
}

SeriesValue entrance_density_as_printed(const ExpFunctionalModel& md, double t, double x, double tol) {
    require_case(md, ExpFunCase::UpSpectrallyNegative);
    if (!(t > 0.0) || !(x > 0.0)) throw domain_error("entrance_density: t and x must be positive");
    const double pre = -std::pow(t, -1.0 / md.alpha) / (md.alpha * md.c * md.m * M_PI);
    const double y = std::pow(x, 1.0 / md.alpha);
    return scaled(zolotarev_sum(md.alpha, 1.0, y, tol / std::fabs(pre)), pre);
}

namespace {

using ld = long double;
constexpr ld kEpsLd = std::numeric_limits<ld>::epsilon();

struct LdSeries {
    ld value = 0;
    ld bound = 0;
    long n = 0;
    bool converged = false;
};

SeriesValue to_double(const LdSeries& s, ld factor) {
    return {static_cast<double>(s.value * factor), static_cast<double>(s.bound * std::fabs(factor)), s.n,
            s.converged};
}

// Unit-scale supremum density by its convergent series, argument given as log y.
LdSeries sup_series_unit(double alpha, ld ly, ld tol) {
    const ld a = alpha;
    const ld k = std::sin(static_cast<ld>(M_PI) / a) / static_cast<ld>(M_PI);
    auto env = [&](long n) -> ld {
        return k * std::exp((a * n - 2) * ly - std::lgamma(a * n - 1) + std::lgamma(n - 1 / a));
    };
    ld sum = 0, abs_sum = 0;
    ld e_n = env(1), e_n1 = env(2), e_n2 = env(3);
    ld bound = kInf;
    for (long n = 1; n <= kMaxSeriesTerms; ++n) {
        sum += (n % 2) ? e_n : -e_n;
        abs_sum += e_n;
        if (!std::isfinite(abs_sum)) return {sum, static_cast<ld>(kInf), n, false};
        const ld e_n3 = env(n + 3);
        ld trunc = kInf;
        if (e_n1 == 0) {
            trunc = 0;
        } else {
            const ld r1 = e_n2 / e_n1, r2 = e_n3 / e_n2;
            if (r1 < 1 && r2 <= r1) trunc = e_n1 / (1 - r1);
        }
        bound = trunc + 8 * kEpsLd * abs_sum;
        if (bound <= tol) return {sum, bound, n, true};
        e_n = e_n1;
        e_n1 = e_n2;
        e_n2 = e_n3;
    }
    return {sum, bound, kMaxSeriesTerms, false};
}

// Large-y expansion: the residue series at the poles of Gamma(s - 1/alpha)
// and of the alternating kernel at negative integers, truncated at its
// smallest term.
LdSeries sup_asymptotic_unit(double alpha, ld ly, ld tol) {
    const ld a = alpha;
    const ld pi = static_cast<ld>(M_PI);
    ld sum = 0;
    ld prev_env = kInf, next_env = kInf;
    long used = 0;
    for (long j = 1; j < 400; ++j) {
        const ld aj = a * j;
        // both families carry -sin(pi a j)/pi after reflecting 1/Gamma(-a j) and Gamma(-j - 1/a)
        const ld env = (std::exp(std::lgamma(1 + aj) - std::lgamma(static_cast<ld>(j + 1)) - (1 + aj) * ly) +
                        std::exp(std::lgamma(2 + aj) - std::lgamma(1 + j + 1 / a) - (2 + aj) * ly)) / pi;
        next_env = env;
        if (env > prev_env) break;
        sum -= std::sin(pi * std::fmod(aj, static_cast<ld>(2))) * env;
        prev_env = env;
        used = j;
        if (env < kEpsLd * std::fabs(sum)) {
            next_env = env;
            break;
        }
    }
    // error taken as the first omitted envelope
    const ld bound = next_env + 8 * kEpsLd * std::fabs(sum);
    return {sum, bound, used, bound <= tol};
}

LdSeries sup_unit(double alpha, ld ly, ld tol) {
    LdSeries s = sup_series_unit(alpha, ly, tol);
    if (s.converged) return s;
    LdSeries as = sup_asymptotic_unit(alpha, ly, tol);
    return as.bound <= s.bound || !std::isfinite(s.value) ? as : s;
}

}  // namespace

SeriesValue sup_density(const ExpFunctionalModel& md, double y, double tol) {
    require_case(md, ExpFunCase::StarSpectrallyPositive);
    if (!(y > 0.0)) throw domain_error("sup_density: y must be positive");
    const ld ls = -std::log(static_cast<ld>(md.c)) / md.alpha;
    const ld s = std::exp(ls);
    return to_double(sup_unit(md.alpha, std::log(static_cast<ld>(y)) + ls, tol / s), s);
}

SeriesValue density_I_star(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::StarSpectrallyPositive);
    if (!(x > 0.0)) throw domain_error("density_I_star: x must be positive");
    const ld a = md.alpha, lx = std::log(static_cast<ld>(x));
    const ld ls = -std::log(static_cast<ld>(md.c)) / a;
    // p(x) = x^{-1-1/a} f(x^{-1/a}) / a, carried in long double near x = 0
    const ld f = std::exp(ls + (-1 - 1 / a) * lx) / a;
    return to_double(sup_unit(md.alpha, -lx / a + ls, tol / f), f);
}

SeriesValue density_I_star_as_printed(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::StarSpectrallyPositive);
    if (!(x > 0.0)) throw domain_error("density_I_star: x must be positive");
    // sum a_n x^{alpha(2 - n alpha)} is the unit supremum density at x^{-alpha}
    const ld pre = std::pow(static_cast<ld>(md.c), 1 / static_cast<ld>(md.alpha));
    return to_double(sup_unit(md.alpha, -md.alpha * std::log(static_cast<ld>(x)), tol / pre), pre);
}

double cdf_I_star(const ExpFunctionalModel& md, double x, double tol) {
    require_case(md, ExpFunCase::StarSpectrallyPositive);
    if (!(x > 0.0)) throw domain_error("cdf_I_star: x must be positive");
    auto f = [&](double w) { return density_I_star(md, w).value; };
    return integrate_adaptive(f, 0.0, x, tol).value;
}

double star_left_constant(const ExpFunctionalModel& md) {
    require_case(md, ExpFunCase::StarSpectrallyPositive);
    return md.c * rgamma(-md.alpha) / md.alpha;
}

const char* tail_name(TailWhich w) {
    switch (w) {
        case TailWhich::UpRight: return "UpRight";
        case TailWhich::DownRight: return "DownRight";
        case TailWhich::StarLeft: return "StarLeft";
        case TailWhich::UpLeft: return "UpLeft";
    }
    return "?";
}

TailFit tail_exponent_check(const ExpFunctionalModel& md, TailWhich which) {
    constexpr int n = 8;
    std::vector<double> xs(n), ys(n);
    TailFit fit;
    switch (which) {
        case TailWhich::UpRight: {
            require_case(md, ExpFunCase::UpSpectrallyNegative);
            fit.expected = -md.alpha;
            fit.x_lo = 1e2 / md.c;
            fit.x_hi = 1e3 / md.c;
            for (int i = 0; i < n; ++i) {
                xs[i] = fit.x_lo * std::pow(10.0, static_cast<double>(i) / (n - 1));
                auto f = [&](double w) { return density_I(md, w).value; };
                ys[i] = integrate_adaptive(f, xs[i], INFINITY, 1e-12).value;
            }
            break;
        }
        case TailWhich::StarLeft: {
            require_case(md, ExpFunCase::StarSpectrallyPositive);
            fit.expected = 1.0;
            fit.x_lo = 1e-4 / md.c;
            fit.x_hi = 1e-3 / md.c;
            for (int i = 0; i < n; ++i) {
                xs[i] = fit.x_lo * std::pow(10.0, static_cast<double>(i) / (n - 1));
                ys[i] = cdf_I_star(md, xs[i], 1e-12);
            }
            break;
        }
        case TailWhich::DownRight:
            throw domain_error("tail_exponent_check: no density of I(-xi_down) is available");
        case TailWhich::UpLeft:
            throw domain_error("tail_exponent_check: UpLeft needs the excursion entrance density, not available");
    }
    for (int i = 0; i < n; ++i)
        if (!(ys[i] > 0.0)) throw numeric_error("tail_exponent_check: tail underflowed on the fit grid");
    fit.slope = loglog_slope(xs.data(), ys.data(), n);
    return fit;
}

}  // namespace pssmp
