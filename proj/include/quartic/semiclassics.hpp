#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quartic/model.hpp"
#include "quartic/numerics.hpp"
#include "quartic/orthopoly.hpp"
#include "quartic/painleve2.hpp"
#include "quartic/psi_cp.hpp"

namespace quartic {

// Ansatz scalars at index n: the double-scaling R values and theta_n.
struct AnsatzFrame {
    ModelParams params;
    int n = 0;
    double y = 0.0;
    double R_prev0 = 0.0, R_n0 = 0.0, R_next0 = 0.0;
    double theta_n0 = 0.0;
    double u = 0.0, v = 0.0, w = 0.0;  // Hastings-McLeod data at y
};

AnsatzFrame build_frame(const ModelParams& p, int n, const HMGrid& hm);

// Scaled 2-vector approximants: value = (v1, v2) * exp(log_scale).
struct ScaledVec2 {
    double v1 = 0.0, v2 = 0.0;
    double log_scale = 0.0;
};

// Effective-potential data for the WKB approximants.
class WkbData {
  public:
    WkbData(const ModelParams& p, int n, const HMGrid& hm);

    const AnsatzFrame& frame() const { return frame_; }
    double z0N() const { return z0N_; }
    double z0() const { return z0_; }

    // U0 = -det A_n^0 + N^{-1} (a11' - a11 a12'/a12); real on the real axis.
    double U0(double z) const;
    cplx U0(cplx z) const;
    double U0_deriv(double z) const;
    // d(z) of the sixth-degree approximation, with the Painleve constants.
    double d_poly(double z) const;

    Mat2 A0(double z) const;  // the matrix A_n^0

    // xi^c(z) = int_{z0N}^z sqrt(U0); real z >= z0N along the segment, or a
    // straight complex path with branch tracking (throws on a detected flip).
    double xi_c(double z) const;
    cplx xi_c(cplx z) const;

    // Bulk phase xi_1(z) = int_{z0N}^z sqrt(-U0), z in [d1, z0 - d1].
    double xi_1(double z) const;

    // Turning-point map w(z) = (3/2 int sqrt(U0))^{2/3}, continued through z0N.
    double tp_map(double z) const;
    double tp_map_deriv_at_z0N() const;

    // Approximants for (psi_n, psi_{n-1}).
    ScaledVec2 psi_wkb_exterior(double z) const;
    Vec2 psi_wkb_bulk(double z) const;
    Vec2 psi_airy_tp(double z) const;
    Vec2 psi_critical(double z, const PhiSolution& phi) const;

    // log h_n from the regularized WKB integral: 2N * reg int_{zN}^inf
    // sqrt(-d), with the (mu3, mu1, mu_-1) subtraction.
    double hn_asymptotic() const;

    double mu3() const { return 0.5 * frame_.params.g; }
    double mu1() const { return 0.5 * frame_.params.t; }
    double mu_m1() const { return -static_cast<double>(frame_.n) / frame_.params.N; }

  private:
    AnsatzFrame frame_;
    double z0_ = 0.0, z0N_ = 0.0, zN_d_ = 0.0;
    double c3_ = 0.0, c4_ = 0.0;
};

// Zeroth-order conformal map data.
struct ZetaMaps {
    ModelParams params;
    double y = 0.0;
    double z0 = 0.0, c0 = 0.0, C = 0.0;

    cplx D_inf(cplx z) const;   // int_0^z (g u^2/2) sqrt(z0^2 - u^2)
    cplx D_1(cplx z) const;     // c0 asin(z/z0)
    cplx zeta_inf(cplx z) const;
    cplx zeta_1(cplx z) const;
    cplx zeta_0(cplx z) const;  // zeta_inf + N^{-2/3} y zeta_1
    double zeta0_prime0() const;
    double N23() const { return std::pow(static_cast<double>(params.N), 2.0 / 3.0); }
};

ZetaMaps zeta_maps(const ModelParams& p, double y, int N);

// alpha(y) from the equation of periods, solved on the contour form of the
// period integral. alpha(0) = 0; alpha ~ const * y^2 near 0.
double period_alpha(const ModelParams& p, double y, int N);

// Contour period integral I(x1, x2) (circle of radius 1 about s = 1).
double period_integral(double x1, double x2);

struct RegionError {
    int N = 0;
    std::string region;
    double sup_error = 0.0;
};

struct CompareReport {
    std::vector<RegionError> rows;
    // fitted exponent per region (error ~ N^-rate)
    std::vector<std::pair<std::string, double>> fitted_rates;
};

struct CompareOptions {
    double d1 = 0.0;     // region half-width; 0 selects z0/4
    double d2 = 0.0;     // rectangle half-height (recorded; real-axis grids only)
    int threads = 1;     // fan out over N_list entries
};

// Sup relative errors of the WKB / TP / CP approximants against the
// quadrature oracle, for each N in N_list and n = round(lambda_c N) + k.
CompareReport compare_harness(const ModelParams& base, const std::vector<int>& N_list,
                              const std::vector<int>& k_range,
                              const std::vector<std::string>& regions,
                              const HMGrid& hm, const CompareOptions& opt = {});

}  // namespace quartic
