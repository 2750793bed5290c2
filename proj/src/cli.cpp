#include "pssmp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pssmp/laws.hpp"
#include "pssmp/montecarlo.hpp"
#include "pssmp/numerics.hpp"
#include "pssmp/verify.hpp"

namespace pssmp {

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "";
    // shortest of %.15g..%.17g that reads back exactly
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

struct RunConfig {
    std::string law;
    std::string kind = "up";
    std::string side = "up";
    std::string extremum = "max";
    std::string spectral = "up-neg";
    std::string grid = "0:1:11";
    std::string out;
    std::string suite = "all";
    LawArgs args;
    std::uint64_t seed = VerifyOptions{}.seed;
    long n_paths = 1000;
    double step = 1e-3;
    double max_time = 50.0;
    int levels = 3;
};

Kind parse_kind(const std::string& s) {
    if (s == "up") return Kind::Up;
    if (s == "down") return Kind::Down;
    return Kind::Star;
}

void write_meta(std::ostream& os, const std::string& command, const RunConfig& rc,
                const std::vector<std::pair<std::string, std::string>>& extra) {
    const StableParams& p = rc.args.params;
    os << "# tool=pssmp\n# version=" << PSSMP_VERSION << "\n# command=" << command << "\n";
    os << "# alpha=" << num(p.alpha) << "\n# rho=" << num(p.rho) << "\n# c_plus=" << num(p.c_plus)
       << "\n# c_minus=" << num(p.c_minus) << "\n";
    for (const auto& [k, v] : extra) os << "# " << k << "=" << v << "\n";
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
}

int cmd_eval(const RunConfig& rc, std::ostream& os) {
    if (rc.law.empty()) throw domain_error("eval: --law is required");
    if (!is_law(rc.law)) throw domain_error("unknown law '" + rc.law + "'");
    const Grid g = parse_grid(rc.grid);
    const LawTable t = evaluate_law(rc.law, rc.args, g);
    const LawArgs& a = rc.args;
    write_meta(os, "eval", rc,
               {{"law", rc.law},
                {"kind", rc.kind},
                {"side", rc.side},
                {"u", num(a.window.u)},
                {"v", num(a.window.v)},
                {"extremum", rc.extremum},
                {"case", rc.spectral},
                {"m", num(a.m)},
                {"q_ladder", num(a.q_ladder)},
                {"a", num(a.a)},
                {"b", num(a.b)},
                {"x", num(a.x)},
                {"y", num(a.y)},
                {"t", num(a.t)},
                {"phi", num(a.phi)},
                {"eta", num(a.eta)},
                {"tail", a.tail},
                {"tol", num(a.tol)},
                {"grid", rc.grid}});
    write_row(os, t.columns);
    for (const auto& row : t.rows) {
        std::vector<std::string> cells;
        for (double v : row) cells.push_back(num(v));
        write_row(os, cells);
    }
    return kExitPass;
}

int cmd_simulate(const RunConfig& rc, std::ostream& os, std::ostream& err) {
    SimConfig cfg{rc.n_paths, rc.step, rc.seed, rc.max_time};
    const ExitSampleSet s = simulate_exit(parse_kind(rc.kind), rc.args.params, rc.args.window, cfg);
    write_meta(os, "simulate", rc,
               {{"kind", rc.kind},
                {"u", num(rc.args.window.u)},
                {"v", num(rc.args.window.v)},
                {"n_paths", std::to_string(rc.n_paths)},
                {"step", num(rc.step)},
                {"max_time", num(rc.max_time)},
                {"seed", std::to_string(rc.seed)},
                {"censored", std::to_string(s.count(ExitSide::Censored))}});
    write_row(os, {"path_id", "side", "theta", "h_weight", "steps_used"});
    for (size_t i = 0; i < s.paths.size(); ++i) {
        const ExitRecord& r = s.paths[i];
        const bool exited = r.side == ExitSide::Up || r.side == ExitSide::Down;
        write_row(os, {std::to_string(i), side_name(r.side), exited ? num(r.theta) : "", num(r.h_weight),
                       std::to_string(r.steps_used)});
    }
    const double frac = censored_fraction(s);
    if (frac >= 1e-3) {
        err << "pssmp: " << s.count(ExitSide::Censored) << " paths censored by max_time=" << rc.max_time
            << " (fraction " << frac << " >= 0.001)\n";
        return kExitRuntime;
    }
    return kExitPass;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, std::ostream& os) {
    if (!is_suite(suite)) throw domain_error("unknown suite '" + suite + "'");
    const SuiteReport r = run_suite(suite, opt);
    os << report_json(r) << "\n";
    return r.passed() ? kExitPass : kExitVerifyFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    LawArgs& a = rc.args;
    CLI::App app{"Fluctuation identities of Levy-Lamperti processes from stable processes", "pssmp"};
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.require_subcommand(1, 1);

    app.add_option("--law", rc.law, "law to tabulate (eval)");
    app.add_option("--kind", rc.kind, "Lamperti kind")->check(CLI::IsMember({"up", "down", "star"}));
    app.add_option("--side", rc.side, "exit side for overshoot laws")->check(CLI::IsMember({"up", "down"}));
    app.add_option("--extremum", rc.extremum, "extrema-star: max or min")->check(CLI::IsMember({"max", "min"}));
    app.add_option("--case", rc.spectral, "spectrally one-sided case")
        ->check(CLI::IsMember({"up-neg", "down-neg", "down-pos"}));
    app.add_option("--alpha", a.params.alpha, "stability index");
    app.add_option("--rho", a.params.rho, "positivity parameter P(X_1 < 0)");
    app.add_option("--c-plus", a.params.c_plus, "weight of positive jumps");
    app.add_option("--c-minus", a.params.c_minus, "weight of negative jumps");
    app.add_option("--m", a.m, "override of the mean m (0 derives it from c_minus)");
    app.add_option("--q-ladder", a.q_ladder, "ladder killing rate for the down-neg triple law");
    app.add_option("--u", a.window.u, "upper log-barrier");
    app.add_option("--v", a.window.v, "lower log-barrier");
    app.add_option("--a", a.a, "Rogozin level / first hitting target / down-pos barrier");
    app.add_option("--b", a.b, "second hitting target");
    app.add_option("--x", a.x, "Rogozin start point");
    app.add_option("--y", a.y, "ruin: distance to the upper level");
    app.add_option("--t", a.t, "entrance-law time");
    app.add_option("--phi", a.phi, "triple law undershoot");
    app.add_option("--eta", a.eta, "triple law prior extremum");
    app.add_option("--tail", a.tail, "tails: up-right or star-left");
    app.add_option("--tol", a.tol, "absolute tolerance for series evaluations")->check(CLI::PositiveNumber);
    app.add_option("--grid", rc.grid, "A:B:N[:log]");
    CLI::Option* o_paths = app.add_option("--n-paths", rc.n_paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
    CLI::Option* o_step = app.add_option("--step", rc.step, "time step (finest step for verify)")->check(CLI::PositiveNumber);
    CLI::Option* o_time = app.add_option("--max-time", rc.max_time, "path horizon")->check(CLI::PositiveNumber);
    CLI::Option* o_levels = app.add_option("--levels", rc.levels, "step-refinement levels")->check(CLI::Range(2, 12));
    app.add_option("--seed", rc.seed, "64-bit seed")->envname("PSSMP_SEED");
    app.add_option("--out", rc.out, "output path (default stdout)");

    CLI::App* eval = app.add_subcommand("eval", "tabulate a law to CSV");
    CLI::App* sim = app.add_subcommand("simulate", "simulate exit samples to CSV");
    CLI::App* ver = app.add_subcommand("verify", "run a verification suite, JSON report");
    ver->add_option("suite,--suite", rc.suite, "normalization|esscher|extrema|scale|hitting|expfun|montecarlo|all");
    for (CLI::App* s : {eval, sim, ver}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &out;
    if (!rc.out.empty()) {
        file = std::make_unique<std::ofstream>(rc.out);
        if (!*file) {
            err << "pssmp: cannot open " << rc.out << "\n";
            return kExitRuntime;
        }
        os = file.get();
    }
    a.kind = parse_kind(rc.kind);
    a.side = rc.side == "up" ? Direction::Up : Direction::Down;
    a.extremum = rc.extremum == "max" ? Extremum::Max : Extremum::Min;
    a.spectral = rc.spectral == "up-neg"     ? SpectralCaseKind::UpNeg
                 : rc.spectral == "down-neg" ? SpectralCaseKind::DownNeg
                                             : SpectralCaseKind::DownPos;
    try {
        validate_basic(a.params);
        if (eval->parsed()) return cmd_eval(rc, *os);
        if (sim->parsed()) return cmd_simulate(rc, *os, err);
        // verify keeps the acceptance budget unless told otherwise
        VerifyOptions opt;
        opt.seed = rc.seed;
        if (o_paths->count()) opt.n_paths = rc.n_paths;
        if (o_step->count()) opt.step = rc.step;
        if (o_time->count()) opt.max_time = rc.max_time;
        if (o_levels->count()) opt.levels = rc.levels;
        return cmd_verify(rc.suite, opt, *os);
    } catch (const domain_error& e) {
        err << "pssmp: domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "pssmp: runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace pssmp
