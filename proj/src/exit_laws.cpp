#include "pssmp/exit_laws.hpp"

#include <cmath>

#include "pssmp/numerics.hpp"

namespace pssmp {

namespace {

void check_window(const ExitWindow& w, bool allow_v_inf, bool allow_u_inf) {
    const bool v_ok = (w.v < 0.0 && std::isfinite(w.v)) || (allow_v_inf && w.v == -INFINITY);
    const bool u_ok = (w.u > 0.0 && std::isfinite(w.u)) || (allow_u_inf && w.u == INFINITY);
    if (!v_ok || !u_ok) throw domain_error("exit window must satisfy v < 0 < u");
}

void check_theta(double theta) {
    if (!(theta >= 0.0)) throw domain_error("overshoot theta must be nonnegative");
}

// log of the theta-dependent kernel without the Esscher factor; the caller
// multiplies by exp(gamma * barrier-level).
double log_kernel_up(double ar, double aq, double v, double u, double theta) {
    const double s = u + theta;
    double lf = std::log(std::sin(M_PI * aq) / M_PI) + aq * std::log(std::expm1(u)) -
                aq * (u + std::log(std::expm1(theta))) - std::log(std::expm1(s));
    if (std::isfinite(v))
        lf += ar * std::log(-std::expm1(v)) - ar * (s + std::log1p(-std::exp(v - s)));
    else
        lf -= ar * s;
    return lf;
}

double log_kernel_down(double ar, double aq, double v, double u, double theta) {
    const double s = v - theta;
    double lf = std::log(std::sin(M_PI * ar) / M_PI) + ar * std::log(-std::expm1(v)) -
                ar * (v + std::log(-std::expm1(-theta))) - std::log(-std::expm1(s));
    if (std::isfinite(u)) lf += aq * std::log(std::expm1(u)) - aq * std::log(std::exp(u) - std::exp(s));
    return lf;
}

double density_impl(const ExitLawQuery& q) {
    check_theta(q.theta);
    if (is_creeping_side(q)) return 0.0;
    const double ar = q.params.alpha * q.params.rho;
    const double aq = q.params.alpha * (1.0 - q.params.rho);
    const double g = q.kind.gamma_exponent;
    const double v = q.window.v, u = q.window.u;
    if (q.direction == Direction::Up)
        return std::exp(log_kernel_up(ar, aq, v, u, q.theta)) * std::exp(g * (u + q.theta));
    return std::exp(log_kernel_down(ar, aq, v, u, q.theta)) * std::exp(g * (v - q.theta));
}

}  // namespace

ExitLawQuery make_query(Kind k, const StableParams& p, ExitWindow w, Direction d, double theta) {
    return {make_kind(k, p), p, w, d, theta};
}

bool is_creeping_side(const ExitLawQuery& q) {
    if (q.direction == Direction::Up) return is_spectrally_negative(q.params);
    return is_spectrally_positive(q.params);
}

double exit_density_two_sided(const ExitLawQuery& q) {
    require_exit_params(q.params);
    check_window(q.window, false, false);
    return density_impl(q);
}

double exit_density_one_sided(const ExitLawQuery& q) {
    require_exit_params(q.params);
    ExitLawQuery r = q;
    if (q.direction == Direction::Up) {
        check_window(q.window, true, false);
        r.window.v = -INFINITY;
    } else {
        check_window(q.window, false, true);
        r.window.u = INFINITY;
    }
    return density_impl(r);
}

double exit_density(const ExitLawQuery& q) {
    if (std::isinf(q.window.v) || std::isinf(q.window.u)) return exit_density_one_sided(q);
    return exit_density_two_sided(q);
}

double creeping_mass(const ExitLawQuery& q) {
    if (!is_creeping_side(q)) return 0.0;
    const double ar = q.params.alpha * q.params.rho;
    const double aq = q.params.alpha * (1.0 - q.params.rho);
    const double g = q.kind.gamma_exponent;
    const double v = q.window.v, u = q.window.u;
    if (q.direction == Direction::Up) {
        const double z = std::isfinite(v) ? -std::expm1(v) / (std::exp(u) - std::exp(v)) : std::exp(-u);
        return std::exp(u * (g - 1.0)) * reg_incomplete_beta(ar, aq, z);
    }
    const double zc = std::isfinite(u) ? std::expm1(u) / (std::exp(u) - std::exp(v)) : 1.0;
    return std::exp(v * (g - 1.0)) * reg_incomplete_beta(aq, ar, zc);
}

double exit_mass(const ExitLawQuery& q, double tol) {
    if (is_creeping_side(q)) {
        require_exit_params(q.params);
        return creeping_mass(q);
    }
    ExitLawQuery r = q;
    auto f = [&](double th) {
        r.theta = th;
        return exit_density(r);
    };
    exit_density(q);  // validates
    return integrate_adaptive(f, 0.0, INFINITY, tol).value;
}

double exit_cdf(const ExitLawQuery& q, double theta, double tol) {
    check_theta(theta);
    if (theta == 0.0 || is_creeping_side(q)) return 0.0;
    ExitLawQuery r = q;
    auto f = [&](double th) {
        r.theta = th;
        return exit_density(r);
    };
    return integrate_adaptive(f, 0.0, theta, tol).value;
}

double min_cdf_up(const StableParams& p, double z) {
    require_exit_params(p);
    if (!(z >= 0.0)) throw domain_error("min_cdf_up: z must be nonnegative");
    return std::pow(-std::expm1(-z), p.alpha * p.rho);
}

double max_cdf_down(const StableParams& p, double z) {
    require_exit_params(p);
    if (!(z >= 0.0)) throw domain_error("max_cdf_down: z must be nonnegative");
    return std::pow(-std::expm1(-z), p.alpha * (1.0 - p.rho));
}

namespace {

// P(T^-_{-z} < infinity) for the killed process.
double star_down_mass(const StableParams& p, double z) {
    return exit_mass(make_query(Kind::Star, p, {-z, INFINITY}, Direction::Down), 1e-13);
}

}  // namespace

double extrema_density_star(const StableParams& p, double z, Extremum which) {
    require_two_sided(p);
    if (!(z >= 0.0)) throw domain_error("extrema_density_star: z must be nonnegative");
    const double ar = p.alpha * p.rho, aq = p.alpha * (1.0 - p.rho);
    if (which == Extremum::Max) {
        if (z == 0.0) return ar < 1.0 ? INFINITY : 0.0;
        const double c = std::exp(log_gamma(p.alpha) - log_gamma(ar) - log_gamma(aq));
        return c * std::exp(-z * aq) * std::pow(-std::expm1(-z), ar - 1.0);
    }
    if (z == 0.0) throw domain_error("extrema_density_star: Min density is singular at z = 0");
    // derivative of 1 - P(T^-_{-z} < inf); central difference, step scaled to z
    const double h = std::min(1e-3 * z, 1e-3);
    return (star_down_mass(p, z - h) - star_down_mass(p, z + h)) / (2.0 * h);
}

double extrema_min_star_as_printed(const StableParams& p, double z) {
    require_two_sided(p);
    const double ar = p.alpha * p.rho;
    return rgamma(ar) * rgamma(1.0 - ar) * std::pow(std::expm1(z), ar);
}

double max_cdf_star_as_printed(const StableParams& p, double z) {
    require_two_sided(p);
    if (!(z >= 0.0)) throw domain_error("max_cdf_star_as_printed: z must be nonnegative");
    return reg_incomplete_beta(p.alpha * p.rho, p.alpha * (1.0 - p.rho), -std::expm1(-z));
}

double max_cdf_star_from_exit(const StableParams& p, double z) {
    require_two_sided(p);
    if (!(z > 0.0)) throw domain_error("max_cdf_star_from_exit: z must be positive");
    return 1.0 - exit_mass(make_query(Kind::Star, p, {-INFINITY, z}, Direction::Up), 1e-13);
}

}  // namespace pssmp
