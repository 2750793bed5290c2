#include "pssmp/stable.hpp"

#include <cmath>

#include "pssmp/numerics.hpp"

namespace pssmp {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

LampertiKind make_kind(Kind k, const StableParams& p) {
    const double ar = p.alpha * p.rho;
    switch (k) {
        case Kind::Star: return {k, 1.0, p.c_minus / p.alpha};
        case Kind::Up: return {k, ar + 1.0, 0.0};
        case Kind::Down: return {k, ar, 0.0};
    }
    return {k, 0.0, 0.0};
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Star: return "star";
        case Kind::Up: return "up";
        case Kind::Down: return "down";
    }
    return "?";
}

void validate_basic(const StableParams& p) {
    if (!(p.alpha > 0.0 && p.alpha < 2.0)) throw domain_error("alpha must lie in (0,2)");
    if (!(p.rho > 0.0 && p.rho < 1.0)) throw domain_error("rho must lie in (0,1)");
    if (!(p.c_plus >= 0.0) || !(p.c_minus >= 0.0)) throw domain_error("c_plus and c_minus must be nonnegative");
}

bool is_two_sided(const StableParams& p) {
    const double ar = p.alpha * p.rho, aq = p.alpha * (1.0 - p.rho);
    return ar > 0.0 && ar < 1.0 && aq > 0.0 && aq < 1.0 && p.c_plus * p.c_minus > 0.0;
}

bool is_spectrally_negative(const StableParams& p) {
    return p.alpha > 1.0 && p.alpha < 2.0 && std::fabs(p.alpha * (1.0 - p.rho) - 1.0) < kBoundaryTol;
}

bool is_spectrally_positive(const StableParams& p) {
    return p.alpha > 1.0 && p.alpha < 2.0 && std::fabs(p.alpha * p.rho - 1.0) < kBoundaryTol;
}

void require_two_sided(const StableParams& p) {
    validate_basic(p);
    const double ar = p.alpha * p.rho, aq = p.alpha * (1.0 - p.rho);
    if (!(ar < 1.0)) throw domain_error("two-sided mode requires alpha*rho < 1");
    if (!(aq < 1.0)) throw domain_error("two-sided mode requires alpha*(1-rho) < 1");
    if (!(p.c_plus * p.c_minus > 0.0)) throw domain_error("two-sided mode requires c_plus*c_minus > 0");
}

void require_exit_params(const StableParams& p) {
    validate_basic(p);
    if (is_spectrally_negative(p) || is_spectrally_positive(p)) return;
    require_two_sided(p);
}

double rogozin_overshoot_density(const StableParams& p, double a, double x, double y) {
    require_two_sided(p);
    if (!(a > 0.0) || !(x > 0.0 && x < a)) throw domain_error("rogozin: need 0 < x < a");
    if (!(y > 0.0)) throw domain_error("rogozin: overshoot must be positive");
    const double ar = p.alpha * p.rho, aq = p.alpha * (1.0 - p.rho);
    const double lg = aq * std::log(a - x) + ar * std::log(x) - aq * std::log(y) -
                      ar * std::log(y + a) - std::log(y + a - x);
    return std::sin(M_PI * aq) / M_PI * std::exp(lg);
}

double exit_up_probability(const StableParams& p, double a, double x) {
    require_two_sided(p);
    if (!(a > 0.0) || !(x > 0.0 && x < a)) throw domain_error("exit_up_probability: need 0 < x < a");
    return reg_incomplete_beta(p.alpha * p.rho, p.alpha * (1.0 - p.rho), x / a);
}

double resolvent_kappa(double alpha) {
    return 1.0 / (std::pow(2.0, alpha) * gamma_signed(alpha / 2.0));
}

namespace {

// J(S) = int_0^S t^{alpha/2-1} (1+t)^{-1/2} dt
double resolvent_inner(double alpha, double S) {
    const double a2 = alpha / 2.0 - 1.0;
    if (S <= 1.0) {
        auto f = [&](double t) { return std::pow(t, a2) / std::sqrt(1.0 + t); };
        return integrate_adaptive(f, 0.0, S, 1e-14).value;
    }
    // the integrand is t^{beta-1} sqrt(t/(1+t)); split off the pure power
    const double beta = (alpha - 1.0) / 2.0;
    const double B = gamma_signed(alpha / 2.0) * gamma_signed((1.0 - alpha) / 2.0) / std::sqrt(M_PI);
    auto g = [&](double t) {
        const double r = std::sqrt(t / (1.0 + t));
        return std::pow(t, beta - 1.0) / (1.0 + t) / (1.0 + r);
    };
    const double tail = integrate_adaptive(g, S, INFINITY, 1e-14).value;
    return std::pow(S, beta) / beta + B + tail;
}

}  // namespace

double killed_resolvent_u(double alpha, double x, double y, double kappa) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw domain_error("killed_resolvent_u: alpha must lie in (1,2)");
    if (!(x > 0.0) || !(y > 0.0)) throw domain_error("killed_resolvent_u: x and y must be positive");
    if (x == y) return kappa * std::pow(2.0 * x, alpha - 1.0) * 2.0 / (alpha - 1.0);
    const double d = std::fabs(x - y);
    const double S = 4.0 * x * y / (d * d);
    return kappa * std::pow(d, alpha - 1.0) * resolvent_inner(alpha, S);
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream_index)
    : key_(mix64(mix64(seed) ^ (stream_index * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterStream::next_u64() {
    const std::uint64_t c = counter_++;
    return mix64(key_ ^ mix64(c + 0x632be59bd9b4e019ULL));
}

double CounterStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

StableSampler::StableSampler(const StableParams& p) {
    validate_basic(p);
    if (std::fabs(p.alpha - 1.0) < 1e-12) throw domain_error("sampler: alpha = 1 is not supported");
    const double pos = 1.0 - p.rho;  // P(X_1 > 0)
    if (p.alpha > 1.0 && (pos < 1.0 - 1.0 / p.alpha - 1e-12 || pos > 1.0 / p.alpha + 1e-12))
        throw domain_error("sampler: rho outside the admissible range for alpha > 1");
    alpha_ = p.alpha;
    theta0_ = M_PI * p.alpha * (pos - 0.5);
    inv_alpha_ = 1.0 / p.alpha;
    expo_ = (1.0 - p.alpha) / p.alpha;
}

double StableSampler::unit(double u1, double u2) const {
    const double V = M_PI * (u1 - 0.5);
    const double W = -std::log(u2);
    const double a = theta0_ + alpha_ * V;
    return std::sin(a) / std::pow(std::cos(V), inv_alpha_) * std::pow(std::cos(V - a) / W, expo_);
}

double StableSampler::scale(double dt) const { return std::pow(dt, inv_alpha_); }

double StableSampler::draw(double dt, CounterStream& s) const {
    const double u1 = s.uniform();
    const double u2 = s.uniform();
    return scale(dt) * unit(u1, u2);
}

double sample_stable_increment(const StableParams& p, double dt, CounterStream& s) {
    if (!(dt > 0.0)) throw domain_error("sample_stable_increment: dt must be positive");
    return StableSampler(p).draw(dt, s);
}

}  // namespace pssmp
