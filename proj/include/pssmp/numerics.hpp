#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace pssmp {

// Error taxonomy shared by every module. The CLI maps domain_error to exit
// code 2 and the runtime-side errors to exit code 3.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class convergence_error : public numeric_error {
public:
    convergence_error(const std::string& what, double best)
        : numeric_error(what), best_estimate(best) {}
    double best_estimate;
};

class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    long n_terms = 0;
    bool converged = false;
};

double log_gamma(double x);
double gamma_signed(double x);
// 1/Gamma(x), entire; exactly zero at the poles of Gamma.
double rgamma(double x);
double reg_incomplete_beta(double a, double b, double x);

using Integrand = std::function<double(double)>;
// f(x, da, db) with da = x - a and db = b - x, both accurate when small.
// For an infinite upper limit db is +inf.
using EndpointIntegrand = std::function<double(double, double, double)>;

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol,
                              long max_evals = 2000000);
QuadResult integrate_adaptive(const EndpointIntegrand& f, double a, double b, double tol,
                              long max_evals = 2000000);

// term(n) for n = first, first+1, ...  tail(n, term_n) may bound the remainder
// after term n; without it the alternating-series bound |term_{n+1}| is used.
using SeriesTerm = std::function<double(long)>;
using SeriesTail = std::function<double(long, double)>;

SeriesValue sum_series(const SeriesTerm& term, double tol, long max_terms,
                       const SeriesTail& tail = {}, long first = 0);

// Least-squares slope of log|y| against log x.
double loglog_slope(const double* x, const double* y, int n);

}  // namespace pssmp
