#include "pssmp/scale.hpp"

#include <cmath>

#include "pssmp/numerics.hpp"

namespace pssmp {

double subordinator_c(double alpha, double c_minus) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw domain_error("alpha must lie in (1,2)");
    if (!(c_minus > 0.0)) throw domain_error("c_minus must be positive");
    return c_minus * gamma_signed(2.0 - alpha) / (alpha * (alpha - 1.0));
}

double default_m(double alpha, double c_minus) {
    return subordinator_c(alpha, c_minus) * gamma_signed(alpha);
}

void validate_case(const SpectralCase& s) {
    if (!(s.alpha > 1.0 && s.alpha < 2.0)) throw domain_error("spectrally one-sided case needs alpha in (1,2)");
    if (!(s.m > 0.0)) throw domain_error("m must be positive");
}

namespace {

double psi_impl(const SpectralCase& s, double t) {
    const double a = s.alpha;
    if (t <= 150.0) return s.m * gamma_signed(t + a) * rgamma(t) * rgamma(a);
    return s.m * std::exp(log_gamma(t + a) - log_gamma(t)) * rgamma(a);
}

double w_core(double alpha, double x) { return std::pow(-std::expm1(-x), alpha - 1.0); }

}  // namespace

double psi_up(const SpectralCase& s, double theta) {
    validate_case(s);
    if (!(theta >= 0.0)) throw domain_error("psi_up: theta must be nonnegative");
    return psi_impl(s, theta);
}

double psi_down(const SpectralCase& s, double theta) {
    validate_case(s);
    if (!(theta >= 0.0)) throw domain_error("psi_down: theta must be nonnegative");
    return psi_impl(s, theta - 1.0);
}

double scale_fn(const SpectralCase& s, double x) {
    validate_case(s);
    if (!(x >= 0.0)) throw domain_error("scale_fn: x must be nonnegative");
    const double w = w_core(s.alpha, x) / s.m;
    return s.which == SpectralCaseKind::DownNeg ? std::exp(x) * w : w;
}

double ruin_probability(const SpectralCase& s, double x, double y) {
    validate_case(s);
    if (!(x > 0.0) || !(y > 0.0)) throw domain_error("ruin_probability: x and y must be positive");
    double r = w_core(s.alpha, x) / w_core(s.alpha, x + y);
    if (s.which == SpectralCaseKind::DownNeg) r *= std::exp(-y);
    return r;
}

namespace {

double barrier_height(const SpectralCase& s, double barrier) {
    if (s.which == SpectralCaseKind::DownPos) {
        if (!(barrier > 0.0)) throw domain_error("triple law: barrier x must be positive");
        return barrier;
    }
    if (!(barrier < 0.0)) throw domain_error("triple law: barrier v must be negative");
    return -barrier;
}

// eta-factor written in r = H - eta, the distance of the prior extremum from the barrier
double eta_factor(const SpectralCase& s, double r) {
    const double core = std::pow(-std::expm1(-r), s.alpha - 2.0) * std::exp(-r);
    if (s.which == SpectralCaseKind::DownNeg) return (std::exp(r) + s.alpha - 2.0) * core;
    return core;
}

// theta/phi factor as a function of w = theta + phi
double jump_factor(double alpha, double w) {
    return std::exp(-alpha * w) * std::pow(-std::expm1(-w), -1.0 - alpha);
}

double ladder_factor(const SpectralCase& s, double gap) {
    return s.which == SpectralCaseKind::DownNeg ? std::exp(-s.q_ladder * gap) : 1.0;
}

void check_ladder(const SpectralCase& s) {
    if (s.which == SpectralCaseKind::DownNeg && !(s.q_ladder > 0.0))
        throw domain_error("DownNeg triple law requires q_ladder > 0");
}

}  // namespace

double triple_law_kernel(const SpectralCase& s, const TripleLawPoint& pt) {
    validate_case(s);
    check_ladder(s);
    const double H = barrier_height(s, pt.barrier);
    if (!(pt.theta >= 0.0) || !(pt.eta >= 0.0 && pt.eta <= H) || !(pt.phi >= pt.eta))
        throw domain_error("triple law point outside its domain");
    if (s.which == SpectralCaseKind::DownPos) {
        const double w = pt.theta + pt.phi;
        const double e = -pt.barrier + pt.eta;
        return std::pow(-std::expm1(e), s.alpha - 2.0) * std::exp(e) * std::exp(w) *
               std::pow(std::expm1(w), -1.0 - s.alpha);
    }
    const double e = pt.barrier + pt.eta;
    const double lead = std::pow(-std::expm1(e), s.alpha - 2.0) * std::exp(e);
    const double w = pt.theta + pt.phi;
    double k = lead * jump_factor(s.alpha, w);
    if (s.which == SpectralCaseKind::DownNeg) k *= std::exp(-s.q_ladder * (pt.phi - pt.eta)) * (std::exp(-e) + s.alpha - 2.0);
    return k;
}

double triple_law_K(const SpectralCase& s, double barrier, double tol) {
    validate_case(s);
    check_ladder(s);
    const double H = barrier_height(s, barrier);
    const double a = s.alpha;
    EndpointIntegrand outer = [&](double eta, double, double r) {
        auto middle = [&](double gap) {
            const double phi = eta + gap;
            auto inner = [&](double theta) { return jump_factor(a, theta + phi); };
            return ladder_factor(s, gap) * integrate_adaptive(inner, 0.0, INFINITY, tol).value;
        };
        return eta_factor(s, r) * integrate_adaptive(middle, 0.0, INFINITY, tol).value;
    };
    return integrate_adaptive(outer, 0.0, H, tol).value;
}

double triple_law_K_reduced(const SpectralCase& s, double barrier, double tol) {
    validate_case(s);
    check_ladder(s);
    const double H = barrier_height(s, barrier);
    const double a = s.alpha;
    EndpointIntegrand outer = [&](double eta, double, double r) {
        auto middle = [&](double gap) {
            const double phi = eta + gap;
            return ladder_factor(s, gap) * std::pow(std::expm1(phi), -a) / a;
        };
        return eta_factor(s, r) * integrate_adaptive(middle, 0.0, INFINITY, tol).value;
    };
    return integrate_adaptive(outer, 0.0, H, tol).value;
}

double triple_law_K_as_printed(const SpectralCase& s, double barrier) {
    validate_case(s);
    if (!(barrier < 0.0)) throw domain_error("printed constant needs v < 0");
    const double a = s.alpha, v = barrier;
    const double top = std::exp(-v);
    EndpointIntegrand f = [&](double y, double y1, double) {
        return (top - y) / (y * std::pow(y1, a - 1.0));
    };
    const double I = integrate_adaptive(f, 1.0, top, 1e-12).value;
    return std::exp((a - 2.0) * v) / (a * (a - 1.0)) * I -
           std::pow(-std::expm1(v), a - 1.0) / (a * (a - 1.0)) * M_PI / std::sin(M_PI * (a - 1.0));
}

double triple_law_density(const SpectralCase& s, const TripleLawPoint& pt, double K) {
    return triple_law_kernel(s, pt) / K;
}

double triple_law_density(const SpectralCase& s, const TripleLawPoint& pt) {
    return triple_law_density(s, pt, triple_law_K(s, pt.barrier));
}

}  // namespace pssmp
