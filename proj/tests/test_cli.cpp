#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pssmp/cli.hpp"

using namespace pssmp;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pssmp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// data rows of a CSV with # metadata, split on commas
std::vector<std::vector<std::string>> rows(const std::string& csv, std::vector<std::string>* header = nullptr) {
    std::vector<std::vector<std::string>> r;
    std::istringstream is(csv);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (line.back() == ',') cells.push_back("");
        if (first) {
            if (header) *header = cells;
            first = false;
        } else {
            r.push_back(cells);
        }
    }
    return r;
}

std::string meta(const std::string& csv, const std::string& key) {
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("# " + key + "=", 0) == 0) return line.substr(key.size() + 3);
    return {};
}

}  // namespace

TEST_CASE("eval tabulates laws") {
    SUBCASE("minimum law endpoints") {
        const Run r = run({"eval", "--law", "min-cdf-up", "--alpha", "1.5", "--rho", "0.5", "--grid", "0:5:50"});
        REQUIRE(r.code == 0);
        std::vector<std::string> head;
        const auto t = rows(r.out, &head);
        CHECK(head == std::vector<std::string>{"z", "value"});
        REQUIRE(t.size() == 50);
        CHECK(std::stod(t.front()[1]) == 0.0);
        CHECK(std::stod(t.back()[1]) >= 0.99);
        CHECK(meta(r.out, "law") == "min-cdf-up");
        CHECK(meta(r.out, "alpha") == "1.5");
    }
    SUBCASE("Laplace exponent vanishes at zero") {
        const Run r = run({"eval", "--law", "psi", "--grid", "0:4:5"});
        REQUIRE(r.code == 0);
        CHECK(std::stod(rows(r.out)[0][1]) == 0.0);
    }
    SUBCASE("Up over Down densities give the exponential of the exit level") {
        const std::vector<std::string> common = {"eval", "--law", "exit-two-sided", "--u", "0.7", "--v", "-0.4",
                                                 "--grid", "0.05:3:12"};
        auto up = common, dn = common;
        up.insert(up.end(), {"--kind", "up"});
        dn.insert(dn.end(), {"--kind", "down"});
        const auto a = rows(run(up).out), b = rows(run(dn).out);
        REQUIRE(a.size() == 12);
        for (size_t i = 0; i < a.size(); ++i) {
            const double th = std::stod(a[i][0]);
            CHECK(std::stod(a[i][1]) / std::stod(b[i][1]) == doctest::Approx(std::exp(0.7 + th)).epsilon(1e-13));
        }
    }
    SUBCASE("hitting table through the targets") {
        const auto t = rows(run({"eval", "--law", "hit-two-point", "--a", "0.5", "--b", "2", "--grid", "0.5:2:4"}).out);
        REQUIRE(t.size() == 4);
        CHECK(std::stod(t.front()[1]) == 1.0);
        CHECK(std::stod(t.back()[1]) == 0.0);
        CHECK(std::stod(t[1][1]) == doctest::Approx(std::stod(t[1][2])).epsilon(1e-10));
    }
    SUBCASE("log grids") {
        const auto t = rows(run({"eval", "--law", "min-cdf-up", "--grid", "0.01:100:5:log"}).out);
        REQUIRE(t.size() == 5);
        CHECK(std::stod(t[2][0]) == doctest::Approx(1.0));
    }
}

TEST_CASE("simulate writes per-path records") {
    const std::vector<std::string> args = {"simulate", "--kind", "star", "--n-paths", "100", "--seed", "123",
                                           "--step", "0.01", "--u", "0.5", "--v", "-0.5"};
    const Run a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::vector<std::string> head;
    const auto t = rows(a.out, &head);
    CHECK(head == std::vector<std::string>{"path_id", "side", "theta", "h_weight", "steps_used"});
    REQUIRE(t.size() == 100);
    for (const auto& row : t) {
        const std::string& s = row[1];
        CHECK((s == "up" || s == "down" || s == "killed" || s == "censored"));
        CHECK(row[2].empty() == (s == "killed" || s == "censored"));
    }
    CHECK(meta(a.out, "seed") == "123");
}

TEST_CASE("seed fallback from the environment") {
    const std::vector<std::string> args = {"simulate", "--n-paths", "20", "--step", "0.01"};
    ::setenv("PSSMP_SEED", "77", 1);
    const Run env = run(args);
    ::unsetenv("PSSMP_SEED");
    CHECK(meta(env.out, "seed") == "77");
    auto flagged = args;
    flagged.insert(flagged.end(), {"--seed", "77"});
    CHECK(run(flagged).out == env.out);
}

TEST_CASE("config files, overridden by flags") {
    const std::string path = "pssmp_test_config.ini";
    {
        std::ofstream f(path);
        f << "law=min-cdf-up\nalpha=1.2\nrho=0.5\ngrid=0:1:3\n";
    }
    const Run a = run({"eval", "--config", path});
    REQUIRE(a.code == 0);
    CHECK(meta(a.out, "alpha") == "1.2");
    const Run b = run({"eval", "--config", path, "--alpha", "1.7"});
    CHECK(meta(b.out, "alpha") == "1.7");
    std::remove(path.c_str());
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"eval", "--law", "no-such-law"}).code == kExitUsage);
    CHECK(run({"eval", "--law", "min-cdf-up", "--alpha", "3"}).code == kExitUsage);
    CHECK(run({"eval", "--law", "min-cdf-up", "--bogus"}).code == kExitUsage);
    const Run killed = run({"simulate", "--kind", "star", "--c-minus", "0", "--n-paths", "10"});
    CHECK(killed.code == kExitUsage);
    CHECK(killed.err.find("domain error") != std::string::npos);
    CHECK(run({"verify", "nonsense"}).code == kExitUsage);
    CHECK(run({"simulate", "--n-paths", "10", "--step", "1e-9", "--max-time", "1"}).code == kExitRuntime);
    // a horizon too short for the paths to leave the window
    CHECK(run({"simulate", "--n-paths", "50", "--step", "0.01", "--max-time", "0.02", "--u", "3", "--v", "-3"}).code ==
          kExitRuntime);
    CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("verify emits a versioned JSON report") {
    const Run r = run({"verify", "esscher", "--seed", "5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "report_v1");
    CHECK(j["suite"] == "esscher");
    CHECK(j["seed"] == 5);
    CHECK(j["passed"] == true);
    REQUIRE(j["checks"].size() > 0);
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("ref"));
        CHECK(c.contains("status"));
        CHECK(c.contains("measured"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("detail"));
    }
    SUBCASE("normalization masses") {
        const Run n = run({"verify", "--suite", "normalization"});
        CHECK(n.code == 0);
    }
    SUBCASE("small Monte Carlo runs are deterministic") {
        const std::vector<std::string> args = {"verify", "montecarlo", "--n-paths", "100", "--step", "0.005",
                                               "--levels", "2", "--seed", "9"};
        const auto a = nlohmann::json::parse(run(args).out), b = nlohmann::json::parse(run(args).out);
        REQUIRE(a["checks"].size() == b["checks"].size());
        for (size_t i = 0; i < a["checks"].size(); ++i) {
            CHECK(a["checks"][i]["status"] == b["checks"][i]["status"]);
            CHECK(a["checks"][i]["measured"] == b["checks"][i]["measured"]);
        }
        // tolerances widen with the standard error at this size
        for (const auto& c : a["checks"])
            if (c["name"] == "montecarlo: up overshoot ks") CHECK(c["tolerance"].get<double>() > 0.1);
    }
}
