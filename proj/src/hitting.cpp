#include "pssmp/hitting.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "pssmp/numerics.hpp"

namespace pssmp {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 build_u(const HitQuery& q, const Resolvent& u) {
    const double pts[3] = {q.x, q.a, q.b};
    Mat3 U{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) U[i][j] = u(pts[i], pts[j]);
    return U;
}

double cofactor(const Mat3& U, int i, int j) {
    const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    // cyclic ordering absorbs the (-1)^{i+j} sign
    return U[r0][c0] * U[r1][c1] - U[r0][c1] * U[r1][c0];
}

double norm1(const Mat3& M) {
    double best = 0.0;
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += std::fabs(M[i][j]);
        best = std::max(best, s);
    }
    return best;
}

Mat3 inverse(const Mat3& U, double& det) {
    det = 0.0;
    for (int j = 0; j < 3; ++j) det += U[0][j] * cofactor(U, 0, j);
    Mat3 inv{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv[i][j] = cofactor(U, j, i) / det;
    return inv;
}

}  // namespace

Resolvent default_resolvent(double alpha) {
    const double kappa = resolvent_kappa(alpha);
    return [alpha, kappa](double x, double y) { return killed_resolvent_u(alpha, x, y, kappa); };
}

void validate_hit(const HitQuery& q) {
    if (!(q.alpha > 1.0 && q.alpha < 2.0)) throw domain_error("hitting: alpha must lie in (1,2)");
    if (!(q.x > 0.0) || !(q.a > 0.0) || !(q.b > 0.0)) throw domain_error("hitting: points must be positive");
    const double scale = std::max({q.x, q.a, q.b});
    if (std::fabs(q.a - q.b) < 1e-8 * scale) throw domain_error("hitting: targets a and b coincide");
    if (q.x == q.a || q.x == q.b) throw domain_error("hitting: start point coincides with a target");
}

double hit_condition_estimate(const HitQuery& q, const Resolvent& u) {
    const Mat3 U = build_u(q, u);
    double det = 0.0;
    const Mat3 inv = inverse(U, det);
    return norm1(U) * norm1(inv);
}

double hit_matrix_method(const HitQuery& q, const Resolvent& u) {
    validate_hit(q);
    const Mat3 U = build_u(q, u);
    double det = 0.0;
    const Mat3 inv = inverse(U, det);
    const double cond = norm1(U) * norm1(inv);
    if (!(det != 0.0) || !std::isfinite(cond) || cond > 1e12) {
        std::ostringstream os;
        os << "hit_matrix_method: resolvent matrix ill-conditioned (condition estimate " << cond << ")";
        throw numeric_error(os.str());
    }
    // Q = -U^{-1}; probability = -Q(x,a)/Q(x,x)
    const double Qxa = -inv[0][1], Qxx = -inv[0][0];
    return -Qxa / Qxx;
}

double hit_matrix_method(const HitQuery& q) { return hit_matrix_method(q, default_resolvent(q.alpha)); }

double hit_closed_ratio(const HitQuery& q, const Resolvent& u) {
    validate_hit(q);
    const double uxa = u(q.x, q.a), uxb = u(q.x, q.b);
    const double uba = u(q.b, q.a), ubb = u(q.b, q.b);
    const double uaa = u(q.a, q.a), uab = u(q.a, q.b);
    const double den = uaa / uba - uab / ubb;
    if (!(std::fabs(den) > 0.0) || !std::isfinite(den)) throw numeric_error("hit_closed_ratio: vanishing denominator");
    return (uxa / uba - uxb / ubb) / den;
}

double hit_closed_ratio(const HitQuery& q) { return hit_closed_ratio(q, default_resolvent(q.alpha)); }

double hit_prob_lamperti(Kind kind, double alpha, double v, double u) {
    if (kind == Kind::Star) throw domain_error("hit_prob_lamperti: kind must be up or down");
    if (!(v < 0.0) || !(u > 0.0)) throw domain_error("hit_prob_lamperti: need v < 0 < u");
    const double f = hit_closed_ratio({alpha, 1.0, std::exp(v), std::exp(u)});
    const double expo = kind == Kind::Up ? alpha / 2.0 : alpha / 2.0 - 1.0;
    const double p = std::exp(v * expo) * f;
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "hit_prob_lamperti: result " << p << " outside [0,1]";
        throw numeric_error(os.str());
    }
    return p;
}

}  // namespace pssmp
