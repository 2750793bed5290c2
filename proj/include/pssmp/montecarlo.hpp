#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pssmp/exit_laws.hpp"

namespace pssmp {

struct SimConfig {
    long n_paths = 10000;
    double step = 1e-3;
    std::uint64_t seed = 1;
    double max_time = 50.0;
};

enum class ExitSide { Up, Down, Killed, Censored };

const char* side_name(ExitSide s);

struct ExitRecord {
    ExitSide side = ExitSide::Censored;
    double theta = 0.0;  // log-overshoot, meaningful for Up/Down only
    double h_weight = 0.0;
    long steps_used = 0;
};

struct ExitSampleSet {
    SimConfig cfg;
    Kind kind = Kind::Star;
    StableParams params;
    ExitWindow window;
    std::vector<ExitRecord> paths;

    long count(ExitSide s) const;
};

// Paths of the stable process from 1 on the grid k*step; the conditioned
// kinds are recovered by h-weights at the exit time.
ExitSampleSet simulate_exit(Kind kind, const StableParams& p, ExitWindow w, const SimConfig& cfg);

// One sample set per level, level i using step cfg.step / 2^i. All levels see
// the same path, observed on coarser subgrids.
std::vector<ExitSampleSet> simulate_exit_levels(Kind kind, const StableParams& p, ExitWindow w,
                                                const SimConfig& cfg, int levels);

// Weighted estimate of E[f(record)] over all paths, with its standard error.
struct Estimate {
    double mean = 0.0;
    double se = 0.0;
};
Estimate weighted_mean(const ExitSampleSet& s, const std::function<double(const ExitRecord&)>& f);
Estimate prob_up(const ExitSampleSet& s);
Estimate mean_theta_up(const ExitSampleSet& s);  // E[theta; Up] / P(Up)

struct LevelRow {
    double step = 0.0;
    Estimate p_up;
    Estimate theta_up;
    double drift_p = 0.0;      // change from the previous (coarser) level
    double drift_theta = 0.0;
    long censored = 0;
};

struct RefinementReport {
    std::vector<LevelRow> rows;
    // Richardson estimate of the remaining bias at the finest level, order 1/alpha
    double bias_p_up = 0.0;
    double bias_theta_up = 0.0;
};

RefinementReport step_refinement_report(Kind kind, const StableParams& p, ExitWindow w,
                                        const SimConfig& cfg, int levels);
RefinementReport refinement_from_levels(const std::vector<ExitSampleSet>& levels);

// sup |F_n - F| for the weighted empirical CDF; cdf is called with
// nondecreasing arguments.
double ks_distance(const std::vector<double>& x, const std::vector<double>& w,
                   const std::function<double(double)>& cdf);

struct MomentCheck {
    double estimate = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool pass = false;
};

// Weighted k-th moment against target, pass iff |z| <= tolerance_sd.
MomentCheck moment_check(const std::vector<double>& x, const std::vector<double>& w, int k, double target,
                         double tolerance_sd);

// Fraction of paths censored by the horizon; above 1e-3 simulate callers fail.
double censored_fraction(const ExitSampleSet& s);

}  // namespace pssmp
