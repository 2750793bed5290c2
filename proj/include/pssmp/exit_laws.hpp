#pragma once

#include <cmath>

#include "pssmp/stable.hpp"

namespace pssmp {

// Log-scale window v < 0 < u. One-sided problems use v = -inf (upward exit)
// or u = +inf (downward exit).
struct ExitWindow {
    double v = -1.0;
    double u = 1.0;
};

enum class Direction { Up, Down };
enum class Extremum { Max, Min };

struct ExitLawQuery {
    LampertiKind kind;
    StableParams params;
    ExitWindow window;
    Direction direction = Direction::Up;
    double theta = 0.0;
};

ExitLawQuery make_query(Kind k, const StableParams& p, ExitWindow w, Direction d, double theta = 0.0);

double exit_density_two_sided(const ExitLawQuery& q);
double exit_density_one_sided(const ExitLawQuery& q);
// Dispatches on the window: infinite barrier means one-sided.
double exit_density(const ExitLawQuery& q);

// True when the requested side cannot be reached by a jump (spectrally
// one-sided boundary); the density there is identically zero.
bool is_creeping_side(const ExitLawQuery& q);
double creeping_mass(const ExitLawQuery& q);

// Total mass of the overshoot law on the requested side (jumps + creeping).
double exit_mass(const ExitLawQuery& q, double tol = 1e-11);
// P(overshoot <= theta) on the requested side, jump part only.
double exit_cdf(const ExitLawQuery& q, double theta, double tol = 1e-11);

double min_cdf_up(const StableParams& p, double z);
double max_cdf_down(const StableParams& p, double z);

double extrema_density_star(const StableParams& p, double z, Extremum which);
double extrema_min_star_as_printed(const StableParams& p, double z);
// Distribution function of the maximum matching the printed density.
double max_cdf_star_as_printed(const StableParams& p, double z);
// Same quantity from the one-sided upward exit mass of the killed process.
double max_cdf_star_from_exit(const StableParams& p, double z);

}  // namespace pssmp
