#include "pssmp/laws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

#include "pssmp/expfun.hpp"
#include "pssmp/hitting.hpp"
#include "pssmp/numerics.hpp"

namespace pssmp {

std::vector<double> Grid::values() const {
    if (points < 2) throw domain_error("grid: at least 2 points required");
    if (!(stop > start)) throw domain_error("grid: stop must exceed start");
    if (log && !(start > 0.0)) throw domain_error("grid: log spacing needs a positive start");
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        out[i] = log ? start * std::pow(stop / start, f) : start + (stop - start) * f;
    }
    out.back() = stop;
    return out;
}

Grid parse_grid(const std::string& s) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        const size_t next = s.find(':', pos);
        parts.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() < 3 || parts.size() > 4) throw domain_error("grid must look like A:B:N or A:B:N:log");
    Grid g;
    try {
        size_t used = 0;
        g.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        g.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("stop");
        g.points = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("points");
    } catch (const std::logic_error&) {
        throw domain_error("grid '" + s + "' is not of the form A:B:N[:log]");
    }
    if (parts.size() == 4) {
        if (parts[3] != "log" && parts[3] != "lin") throw domain_error("grid spacing must be 'log' or 'lin'");
        g.log = parts[3] == "log";
    }
    g.values();  // validates
    return g;
}

namespace {

using Evaluator = std::function<std::vector<double>(const LawArgs&, double)>;

struct Law {
    std::vector<std::string> columns;
    Evaluator eval;
};

SpectralCase spectral(const LawArgs& a) {
    const double m = a.m > 0.0 ? a.m : default_m(a.params.alpha, a.params.c_minus);
    return {a.spectral, a.params.alpha, m, a.q_ladder};
}

ExitWindow one_sided(const LawArgs& a) {
    ExitWindow w = a.window;
    if (a.side == Direction::Up)
        w.v = -INFINITY;
    else
        w.u = INFINITY;
    return w;
}

const std::map<std::string, Law>& registry() {
    static const std::map<std::string, Law> laws = {
        {"rogozin-density",
         {{"y", "value"},
          [](const LawArgs& a, double y) { return std::vector<double>{rogozin_overshoot_density(a.params, a.a, a.x, y)}; }}},
        {"exit-two-sided",
         {{"theta", "value"},
          [](const LawArgs& a, double th) {
              return std::vector<double>{exit_density_two_sided(make_query(a.kind, a.params, a.window, a.side, th))};
          }}},
        {"exit-one-sided",
         {{"theta", "value"},
          [](const LawArgs& a, double th) {
              return std::vector<double>{exit_density_one_sided(make_query(a.kind, a.params, one_sided(a), a.side, th))};
          }}},
        {"min-cdf-up", {{"z", "value"}, [](const LawArgs& a, double z) { return std::vector<double>{min_cdf_up(a.params, z)}; }}},
        {"max-cdf-down",
         {{"z", "value"}, [](const LawArgs& a, double z) { return std::vector<double>{max_cdf_down(a.params, z)}; }}},
        {"extrema-star",
         {{"z", "value"},
          [](const LawArgs& a, double z) { return std::vector<double>{extrema_density_star(a.params, z, a.extremum)}; }}},
        {"scale-fn", {{"x", "value"}, [](const LawArgs& a, double x) { return std::vector<double>{scale_fn(spectral(a), x)}; }}},
        {"psi",
         {{"theta", "value"},
          [](const LawArgs& a, double th) {
              const SpectralCase s = spectral(a);
              return std::vector<double>{s.which == SpectralCaseKind::UpNeg ? psi_up(s, th) : psi_down(s, th)};
          }}},
        {"ruin",
         {{"x", "value"},
          [](const LawArgs& a, double x) { return std::vector<double>{ruin_probability(spectral(a), x, a.y)}; }}},
        {"triple-law",
         {{"theta", "value"},
          [](const LawArgs& a, double th) {
              const SpectralCase s = spectral(a);
              const double barrier = s.which == SpectralCaseKind::DownPos ? a.a : a.window.v;
              // K is cached per (case, barrier) within one table
              static thread_local std::map<std::tuple<int, double, double, double>, double> cache;
              const auto key = std::make_tuple(static_cast<int>(s.which), s.alpha, s.q_ladder, barrier);
              auto it = cache.find(key);
              if (it == cache.end()) it = cache.emplace(key, triple_law_K_reduced(s, barrier)).first;
              return std::vector<double>{triple_law_density(s, {barrier, th, a.phi, a.eta}, it->second)};
          }}},
        {"hit-two-point",
         {{"x", "matrix", "closed"},
          [](const LawArgs& a, double x) {
              const HitQuery q{a.params.alpha, x, a.a, a.b};
              // starting on a target decides the race
              if (x == a.a && a.a != a.b) return std::vector<double>{1.0, 1.0};
              if (x == a.b && a.a != a.b) return std::vector<double>{0.0, 0.0};
              return std::vector<double>{hit_matrix_method(q), hit_closed_ratio(q)};
          }}},
        {"expfun-density",
         {{"x", "value", "error_bound"},
          [](const LawArgs& a, double x) {
              const SeriesValue s = density_I(make_up_model(a.params.alpha, a.params.c_minus), x, a.tol);
              return std::vector<double>{s.value, s.tail_bound};
          }}},
        {"expfun-moments",
         {{"k", "value"},
          [](const LawArgs& a, double k) {
              const int ki = static_cast<int>(std::lround(k));
              if (std::fabs(k - ki) > 1e-9) throw domain_error("expfun-moments: grid values must be integers");
              return std::vector<double>{neg_moment_I(make_up_model(a.params.alpha, a.params.c_minus), ki)};
          }}},
        {"entrance-density",
         {{"x", "value", "error_bound"},
          [](const LawArgs& a, double x) {
              const SeriesValue s = entrance_density(make_up_model(a.params.alpha, a.params.c_minus), a.t, x, a.tol);
              return std::vector<double>{s.value, s.tail_bound};
          }}},
        {"tails",
         {{"x", "value", "error_bound"},
          [](const LawArgs& a, double x) {
              if (a.tail == "up-right") {
                  const SeriesValue s = upper_tail_I(make_up_model(a.params.alpha, a.params.c_minus), x, a.tol);
                  return std::vector<double>{s.value, s.tail_bound};
              }
              if (a.tail == "star-left")
                  return std::vector<double>{cdf_I_star(make_star_model(a.params.alpha, a.params.c_plus), x), NAN};
              throw domain_error("tails: --tail must be up-right or star-left");
          }}},
    };
    return laws;
}

}  // namespace

const std::vector<std::string>& law_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry()) n.push_back(k);
        return n;
    }();
    return names;
}

bool is_law(const std::string& name) { return registry().count(name) != 0; }

LawTable evaluate_law(const std::string& name, const LawArgs& args, const Grid& grid) {
    auto it = registry().find(name);
    if (it == registry().end()) throw domain_error("unknown law '" + name + "'");
    LawTable t;
    t.columns = it->second.columns;
    for (double x : grid.values()) {
        std::vector<double> row{x};
        for (double v : it->second.eval(args, x)) row.push_back(v);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace pssmp
