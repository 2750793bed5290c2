#pragma once

namespace pssmp {

enum class SpectralCaseKind { UpNeg, DownNeg, DownPos };

struct SpectralCase {
    SpectralCaseKind which = SpectralCaseKind::UpNeg;
    double alpha = 1.5;
    double m = 1.0;
    double q_ladder = 0.0;  // only read by the DownNeg triple law; must be > 0 there
};

// c = c_minus Gamma(2-alpha) / (alpha (alpha-1)), m = c Gamma(alpha)
double subordinator_c(double alpha, double c_minus);
double default_m(double alpha, double c_minus);

void validate_case(const SpectralCase& s);

double psi_up(const SpectralCase& s, double theta);
double psi_down(const SpectralCase& s, double theta);
double scale_fn(const SpectralCase& s, double x);
double ruin_probability(const SpectralCase& s, double x, double y);

// barrier is v < 0 for UpNeg/DownNeg and x > 0 for DownPos.
struct TripleLawPoint {
    double barrier = -1.0;
    double theta = 0.0;
    double phi = 0.0;
    double eta = 0.0;
};

double triple_law_kernel(const SpectralCase& s, const TripleLawPoint& pt);
// Normalizing constant: three nested quadratures of the kernel.
double triple_law_K(const SpectralCase& s, double barrier, double tol = 1e-6);
// Same constant with the theta integral done in closed form.
double triple_law_K_reduced(const SpectralCase& s, double barrier, double tol = 1e-11);
// Closed expression printed alongside the UpNeg triple law; cross-check only.
double triple_law_K_as_printed(const SpectralCase& s, double barrier);
double triple_law_density(const SpectralCase& s, const TripleLawPoint& pt, double K);
double triple_law_density(const SpectralCase& s, const TripleLawPoint& pt);

}  // namespace pssmp
