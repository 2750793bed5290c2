#pragma once

#include <string>
#include <vector>

#include "pssmp/exit_laws.hpp"
#include "pssmp/scale.hpp"

namespace pssmp {

struct Grid {
    double start = 0.0;
    double stop = 1.0;
    int points = 11;
    bool log = false;

    std::vector<double> values() const;
};

// Parses "A:B:N" or "A:B:N:log".
Grid parse_grid(const std::string& s);

// Everything a law evaluator may read besides the abscissa.
struct LawArgs {
    StableParams params;
    Kind kind = Kind::Up;
    ExitWindow window;
    Direction side = Direction::Up;
    Extremum extremum = Extremum::Max;
    SpectralCaseKind spectral = SpectralCaseKind::UpNeg;
    double m = 0.0;  // 0: derived from c_minus
    double q_ladder = 0.5;
    double a = 1.0;  // Rogozin barrier / first hitting target
    double b = 2.0;  // second hitting target
    double x = 0.5;  // Rogozin start point
    double y = 1.0;  // ruin: distance to the upper level
    double t = 1.0;  // entrance-law time
    double phi = 0.5;
    double eta = 0.2;
    std::string tail = "up-right";
    double tol = 1e-12;
};

struct LawTable {
    std::vector<std::string> columns;  // first column is the abscissa
    std::vector<std::vector<double>> rows;
};

const std::vector<std::string>& law_names();
bool is_law(const std::string& name);

// Throws domain_error on an unknown law or a parameter outside its domain.
LawTable evaluate_law(const std::string& name, const LawArgs& args, const Grid& grid);

}  // namespace pssmp
