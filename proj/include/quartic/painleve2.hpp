#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace quartic {

struct AiryPair {
    std::complex<double> Ai;
    std::complex<double> Aip;
};

// Ai and Ai' on the complex plane. On the real axis the relative accuracy is
// ~1e-13 away from zeros of Ai; off the axis the worst case (near the
// series/asymptotics switch ring) is ~1e-9.
AiryPair airy(std::complex<double> z);
void airy_real(double x, double& ai, double& aip);

// Tabulated Hastings-McLeod data on a uniform grid: u solves u'' = y u + 2u^3
// with u ~ Ai at +inf and u ~ sqrt(-y/2) at -inf; v = y + 2u^2, w = u',
// D = int_y^inf u^2, q = (v^2 - 4w^2)/16.
struct HMGrid {
    double y_min = 0.0, y_max = 0.0, h = 0.0;
    std::vector<double> y, u, up, v, D, q;
    double boundary_error_left = 0.0;  // size of the dropped left-tail term

    double clamp_check(double yy) const;
    double u_at(double yy) const;   // cubic Hermite using stored u'
    double up_at(double yy) const;  // Hermite with u'' = y u + 2u^3 as slope data
    double v_at(double yy) const { const double uu = u_at(yy); return yy + 2.0 * uu * uu; }
    double D_at(double yy) const;   // Hermite with D' = -u^2
    double q_at(double yy) const {
        const double vv = v_at(yy), ww = up_at(yy);
        return (vv * vv - 4.0 * ww * ww) / 16.0;
    }
};

// Newton/Numerov boundary-value solve. Preconditions per contract:
// y_min <= -8, y_max >= 6, mesh >= 400. tol bounds the final Newton step in
// max norm. Falls back to a continuation sweep in the cubic term when the
// direct solve stalls; throws std::runtime_error on persistent failure.
HMGrid solve_hastings_mcleod(double y_min, double y_max, int mesh, double tol);

struct TurningPoints {
    double s1_sq = 0.0;
    double s2_sq = 0.0;
    double discriminant = 0.0;
};

// Roots s^2 of s^4 + (y/2)s^2 + q(y) = 0; discriminant D = (y/2)^2 - 4q.
TurningPoints turning_points(const HMGrid& hm, double y);

// Unique positive zero of q(y), located by bisection + secant to 1e-10.
double find_y0(const HMGrid& hm);

// Numerov residual (the collocation form of u'' - y u - 2u^3) at interior
// nodes; used by tests and selftest.
double hm_max_collocation_residual(const HMGrid& hm);

}  // namespace quartic
