#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pssmp {

enum class CheckStatus { Pass, Fail, Finding, Info };

const char* status_name(CheckStatus s);

struct Check {
    std::string name;
    std::string ref;  // the law or identity exercised
    CheckStatus status = CheckStatus::Info;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
    // findings only: the adjudicated behaviour was observed
    bool confirmed = false;
};

struct VerifyOptions {
    std::uint64_t seed = 20240607;
    long n_paths = 100000;
    double step = 1e-4;  // finest grid step of the Monte Carlo suite
    int levels = 3;
    double max_time = 50.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    std::uint64_t seed = 0;
    double runtime = 0.0;

    bool passed() const;
    void merge(const SuiteReport& other);
};

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite(const std::string& name);

// Throws domain_error for an unknown suite name.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);

std::string report_json(const SuiteReport& r);

}  // namespace pssmp
