#include "pssmp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pssmp/numerics.hpp"

namespace pssmp {

namespace {

constexpr double kMaxGridPoints = 1e8;

double h_weight(Kind kind, double ar, double x) {
    switch (kind) {
        case Kind::Star: return 1.0;
        case Kind::Up: return std::pow(x, ar);
        case Kind::Down: return std::pow(x, ar - 1.0);
    }
    return 0.0;
}

}  // namespace

const char* side_name(ExitSide s) {
    switch (s) {
        case ExitSide::Up: return "up";
        case ExitSide::Down: return "down";
        case ExitSide::Killed: return "killed";
        case ExitSide::Censored: return "censored";
    }
    return "?";
}

long ExitSampleSet::count(ExitSide s) const {
    return std::count_if(paths.begin(), paths.end(), [s](const ExitRecord& r) { return r.side == s; });
}

std::vector<ExitSampleSet> simulate_exit_levels(Kind kind, const StableParams& p, ExitWindow w,
                                                const SimConfig& cfg, int levels) {
    require_two_sided(p);
    if (levels < 1) throw domain_error("simulate: levels must be >= 1");
    if (cfg.n_paths < 1) throw domain_error("simulate: n_paths must be >= 1");
    if (!(cfg.step > 0.0) || !(cfg.max_time > 0.0)) throw domain_error("simulate: step and max_time must be positive");
    if (!(w.v < 0.0 && w.u > 0.0) || !std::isfinite(w.v) || !std::isfinite(w.u))
        throw domain_error("simulate: need finite barriers with v < 0 < u");

    const long stride0 = 1L << (levels - 1);
    const double fine = cfg.step / static_cast<double>(stride0);
    const double grid = std::ceil(cfg.max_time / fine);
    if (grid > kMaxGridPoints) throw budget_error("simulate: max_time/step exceeds the 1e8 grid-point cap");
    const long n_fine = static_cast<long>(grid);

    const StableSampler sampler(p);
    const double ar = p.alpha * p.rho;
    const double lo = std::exp(w.v), hi = std::exp(w.u);

    std::vector<ExitSampleSet> out(levels);
    for (int i = 0; i < levels; ++i) {
        out[i].cfg = cfg;
        out[i].cfg.step = cfg.step / static_cast<double>(1L << i);
        out[i].kind = kind;
        out[i].params = p;
        out[i].window = w;
        out[i].paths.resize(cfg.n_paths);
    }
    std::vector<long> stride(levels);
    for (int i = 0; i < levels; ++i) stride[i] = stride0 >> i;

    for (long path = 0; path < cfg.n_paths; ++path) {
        CounterStream rng(cfg.seed, static_cast<std::uint64_t>(path));
        int open = levels;
        std::vector<bool> done(levels, false);
        double x = 1.0;
        for (long k = 1; k <= n_fine && open > 0; ++k) {
            rng.seek(2 * static_cast<std::uint64_t>(k - 1));
            x += sampler.draw(fine, rng);
            for (int i = 0; i < levels; ++i) {
                if (done[i] || k % stride[i] != 0) continue;
                ExitRecord r;
                r.steps_used = k / stride[i];
                if (x <= 0.0) {
                    r.side = ExitSide::Killed;
                    r.h_weight = kind == Kind::Star ? 1.0 : 0.0;
                } else if (x >= hi) {
                    r.side = ExitSide::Up;
                    r.theta = std::log(x) - w.u;
                    r.h_weight = h_weight(kind, ar, x);
                } else if (x <= lo) {
                    r.side = ExitSide::Down;
                    r.theta = w.v - std::log(x);
                    r.h_weight = h_weight(kind, ar, x);
                } else {
                    continue;
                }
                out[i].paths[path] = r;
                done[i] = true;
                --open;
            }
        }
        for (int i = 0; i < levels; ++i) {
            if (done[i]) continue;
            ExitRecord r;
            r.side = ExitSide::Censored;
            r.steps_used = n_fine / stride[i];
            out[i].paths[path] = r;
        }
    }
    return out;
}

ExitSampleSet simulate_exit(Kind kind, const StableParams& p, ExitWindow w, const SimConfig& cfg) {
    return std::move(simulate_exit_levels(kind, p, w, cfg, 1).front());
}

Estimate weighted_mean(const ExitSampleSet& s, const std::function<double(const ExitRecord&)>& f) {
    long n = 0;
    long double sum = 0, sum2 = 0;
    for (const ExitRecord& r : s.paths) {
        if (r.side == ExitSide::Censored) continue;
        const long double v = r.h_weight == 0.0 ? 0.0 : r.h_weight * f(r);
        sum += v;
        sum2 += v * v;
        ++n;
    }
    if (n == 0) throw domain_error("weighted_mean: every path is censored");
    const long double mean = sum / n;
    const long double var = n > 1 ? std::max<long double>(0, (sum2 - n * mean * mean) / (n - 1)) : 0;
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n))};
}

Estimate prob_up(const ExitSampleSet& s) {
    return weighted_mean(s, [](const ExitRecord& r) { return r.side == ExitSide::Up ? 1.0 : 0.0; });
}

Estimate mean_theta_up(const ExitSampleSet& s) {
    // ratio estimator with a delta-method standard error
    long n = 0;
    long double a = 0, b = 0;
    for (const ExitRecord& r : s.paths) {
        if (r.side == ExitSide::Censored) continue;
        ++n;
        if (r.side != ExitSide::Up) continue;
        a += r.h_weight * r.theta;
        b += r.h_weight;
    }
    if (b == 0) return {0.0, INFINITY};
    const long double m = a / b;
    long double v = 0;
    for (const ExitRecord& r : s.paths) {
        if (r.side != ExitSide::Up) continue;
        const long double d = r.h_weight * (r.theta - m);
        v += d * d;
    }
    return {static_cast<double>(m), static_cast<double>(std::sqrt(v) / b)};
}

double censored_fraction(const ExitSampleSet& s) {
    return static_cast<double>(s.count(ExitSide::Censored)) / static_cast<double>(s.paths.size());
}

RefinementReport refinement_from_levels(const std::vector<ExitSampleSet>& levels) {
    RefinementReport rep;
    for (size_t i = 0; i < levels.size(); ++i) {
        LevelRow row;
        row.step = levels[i].cfg.step;
        row.p_up = prob_up(levels[i]);
        row.theta_up = mean_theta_up(levels[i]);
        row.censored = levels[i].count(ExitSide::Censored);
        if (i > 0) {
            row.drift_p = row.p_up.mean - rep.rows.back().p_up.mean;
            row.drift_theta = row.theta_up.mean - rep.rows.back().theta_up.mean;
        }
        rep.rows.push_back(row);
    }
    if (rep.rows.size() >= 2) {
        const double r = std::pow(2.0, 1.0 / levels.front().params.alpha) - 1.0;
        rep.bias_p_up = std::fabs(rep.rows.back().drift_p) / r;
        rep.bias_theta_up = std::fabs(rep.rows.back().drift_theta) / r;
    }
    return rep;
}

RefinementReport step_refinement_report(Kind kind, const StableParams& p, ExitWindow w, const SimConfig& cfg,
                                        int levels) {
    if (levels < 2) throw domain_error("step_refinement_report: levels must be >= 2");
    return refinement_from_levels(simulate_exit_levels(kind, p, w, cfg, levels));
}

double ks_distance(const std::vector<double>& x, const std::vector<double>& w,
                   const std::function<double(double)>& cdf) {
    if (x.empty()) throw domain_error("ks_distance: no samples");
    if (x.size() != w.size()) throw domain_error("ks_distance: weights and samples differ in length");
    long double total = 0;
    for (double wi : w) {
        if (!(wi >= 0.0)) throw domain_error("ks_distance: negative weight");
        total += wi;
    }
    if (!(total > 0)) throw domain_error("ks_distance: weights sum to zero");
    std::vector<size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
    long double cum = 0;
    double d = 0.0;
    for (size_t i = 0; i < idx.size();) {
        const double xi = x[idx[i]];
        const double F = cdf(xi);
        const double before = static_cast<double>(cum / total);
        while (i < idx.size() && x[idx[i]] == xi) cum += w[idx[i++]];
        const double after = static_cast<double>(cum / total);
        d = std::max({d, std::fabs(F - before), std::fabs(F - after)});
    }
    return d;
}

MomentCheck moment_check(const std::vector<double>& x, const std::vector<double>& w, int k, double target,
                         double tolerance_sd) {
    if (x.empty() || x.size() != w.size()) throw domain_error("moment_check: need matching nonempty inputs");
    if (k < 1) throw domain_error("moment_check: k must be >= 1");
    long double sw = 0, swx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(w[i] >= 0.0)) throw domain_error("moment_check: negative weight");
        sw += w[i];
        swx += w[i] * std::pow(static_cast<long double>(x[i]), k);
    }
    if (!(sw > 0)) throw domain_error("moment_check: weights sum to zero");
    const long double est = swx / sw;
    long double v = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        const long double d = w[i] * (std::pow(static_cast<long double>(x[i]), k) - est);
        v += d * d;
    }
    MomentCheck m;
    m.estimate = static_cast<double>(est);
    m.se = static_cast<double>(std::sqrt(v) / sw);
    const double diff = m.estimate - target;
    m.z = m.se > 0.0 ? diff / m.se : (diff == 0.0 ? 0.0 : INFINITY);
    m.pass = std::fabs(m.z) <= tolerance_sd;
    return m;
}

}  // namespace pssmp
