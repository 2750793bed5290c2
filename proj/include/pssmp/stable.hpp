#pragma once

#include <cstdint>

namespace pssmp {

// rho is P(X_1 < 0).
struct StableParams {
    double alpha = 1.5;
    double rho = 0.5;
    double c_plus = 1.0;
    double c_minus = 1.0;
};

enum class Kind { Star, Up, Down };

struct LampertiKind {
    Kind kind = Kind::Up;
    double gamma_exponent = 0.0;
    double killing_rate = 0.0;
};

LampertiKind make_kind(Kind k, const StableParams& p);
const char* kind_name(Kind k);

void validate_basic(const StableParams& p);
bool is_two_sided(const StableParams& p);
// alpha in (1,2) and alpha(1-rho) == 1: no upward jumps.
bool is_spectrally_negative(const StableParams& p);
// alpha in (1,2) and alpha rho == 1: no downward jumps.
bool is_spectrally_positive(const StableParams& p);
void require_two_sided(const StableParams& p);
// two-sided or on one of the spectrally one-sided boundaries
void require_exit_params(const StableParams& p);

double rogozin_overshoot_density(const StableParams& p, double a, double x, double y);
double exit_up_probability(const StableParams& p, double a, double x);

double resolvent_kappa(double alpha);
double killed_resolvent_u(double alpha, double x, double y, double kappa);
inline double killed_resolvent_u(double alpha, double x, double y) {
    return killed_resolvent_u(alpha, x, y, resolvent_kappa(alpha));
}

// Counter-based stream: every draw is a pure function of (key, counter).
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream_index);
    void seek(std::uint64_t counter) { counter_ = counter; }
    std::uint64_t position() const { return counter_; }
    std::uint64_t next_u64();
    // uniform on the open interval (0,1)
    double uniform();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

// Chambers-Mallows-Stuck draw of X_1 with P(X_1 < 0) = rho.
class StableSampler {
public:
    explicit StableSampler(const StableParams& p);
    double unit(double u1, double u2) const;
    double draw(double dt, CounterStream& s) const;
    double scale(double dt) const;

private:
    double alpha_;
    double theta0_;  // alpha * B in the usual notation
    double inv_alpha_;
    double expo_;
};

double sample_stable_increment(const StableParams& p, double dt, CounterStream& s);

}  // namespace pssmp
