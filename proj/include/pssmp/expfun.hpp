#pragma once

#include "pssmp/numerics.hpp"

namespace pssmp {

enum class ExpFunCase { UpSpectrallyNegative, StarSpectrallyPositive, GenericTails };

struct ExpFunctionalModel {
    ExpFunCase which = ExpFunCase::UpSpectrallyNegative;
    double alpha = 1.5;
    double c = 1.0;  // scale of the associated stable subordinator / supremum
    double m = 1.0;  // mean of the underlying Levy process (UpSpectrallyNegative)
};

// c = c_minus Gamma(2-alpha)/(alpha(alpha-1)), m = c Gamma(alpha)
ExpFunctionalModel make_up_model(double alpha, double c_minus);
ExpFunctionalModel make_up_model_from_c(double alpha, double c);
// c = jump weight * Gamma(2-alpha)/(alpha(alpha-1)) for the killed process
ExpFunctionalModel make_star_model(double alpha, double jump_weight);
ExpFunctionalModel make_star_model_from_c(double alpha, double c);

double neg_moment_I(const ExpFunctionalModel& md, int k);
double laplace_I(const ExpFunctionalModel& md, double lambda);

// Power series in (cx)^{-1/alpha}; may report converged = false.
SeriesValue density_I_series(const ExpFunctionalModel& md, double x, double tol = 1e-13);
// Integral representation, usable for every x > 0.
SeriesValue density_I_integral(const ExpFunctionalModel& md, double x, double tol = 1e-13);
// Series first, integral representation when the series cannot reach tol.
SeriesValue density_I(const ExpFunctionalModel& md, double x, double tol = 1e-13);
// P(I >= x) from the termwise-integrated series.
SeriesValue upper_tail_I(const ExpFunctionalModel& md, double x, double tol = 1e-13);

double entrance_moment(const ExpFunctionalModel& md, int k, double t);
SeriesValue entrance_density(const ExpFunctionalModel& md, double t, double x, double tol = 1e-13);
// The closed series with t^{-1/alpha} and c^{-1} outside the sum.
SeriesValue entrance_density_as_printed(const ExpFunctionalModel& md, double t, double x,
                                        double tol = 1e-13);

// Density of the supremum over [0,1] of the spectrally positive process.
SeriesValue sup_density(const ExpFunctionalModel& md, double y, double tol = 1e-12);
SeriesValue density_I_star(const ExpFunctionalModel& md, double x, double tol = 1e-12);
// The closed series with exponent alpha(2 - n alpha).
SeriesValue density_I_star_as_printed(const ExpFunctionalModel& md, double x, double tol = 1e-12);
double cdf_I_star(const ExpFunctionalModel& md, double x, double tol = 1e-10);
// lim_{x->0} P(I* <= x)/x implied by the small-time killing estimate
double star_left_constant(const ExpFunctionalModel& md);

enum class TailWhich { UpRight, DownRight, StarLeft, UpLeft };

struct TailFit {
    double slope = 0.0;
    double expected = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

TailFit tail_exponent_check(const ExpFunctionalModel& md, TailWhich which);
const char* tail_name(TailWhich w);

}  // namespace pssmp
