#pragma once

#include <functional>

#include "pssmp/stable.hpp"

namespace pssmp {

struct HitQuery {
    double alpha = 1.5;
    double x = 1.0;
    double a = 0.5;
    double b = 2.0;
};

using Resolvent = std::function<double(double, double)>;

Resolvent default_resolvent(double alpha);

void validate_hit(const HitQuery& q);

// P_x(first point of {a,b} hit is a, before leaving (0,inf)) via Q = -U^{-1}.
double hit_matrix_method(const HitQuery& q, const Resolvent& u);
double hit_matrix_method(const HitQuery& q);
// The same probability from the closed ratio of resolvent values.
double hit_closed_ratio(const HitQuery& q, const Resolvent& u);
double hit_closed_ratio(const HitQuery& q);

// Probability that the conditioned process, started at 0 in log scale, hits v
// before u. Only kinds Up and Down are meaningful.
double hit_prob_lamperti(Kind kind, double alpha, double v, double u);

// 1-norm condition estimate of the last matrix built by hit_matrix_method.
double hit_condition_estimate(const HitQuery& q, const Resolvent& u);

}  // namespace pssmp
