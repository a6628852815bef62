#pragma once

#include <string>
#include <vector>

#include "quartic/model.hpp"
#include "quartic/orthopoly.hpp"
#include "quartic/psi_cp.hpp"

namespace quartic {

double sine_kernel(double u, double v);
double airy_kernel(double u, double v);

enum class ScalingRegime { Bulk, Edge, Critical };

struct ScalingReport {
    ScalingRegime regime = ScalingRegime::Bulk;
    int N = 0;
    double y = 0.0;
    double center = 0.0;
    double scale = 0.0;  // c N^gamma
    double sup_error = 0.0;
};

// t for the Theorem-1.3 family: t_c + c0 y N^{-2/3}.
double critical_t_shift(double g, double y, int N);

// Compares the rescaled finite-N Christoffel-Darboux kernel against the limit
// kernel on an offsets x offsets grid. Callers construct p (typically via
// critical_t_shift). For Critical, phi must be a solution at the same y.
ScalingReport scaling_limit_check(ScalingRegime regime, const ModelParams& p,
                                  double y, const std::vector<double>& offsets,
                                  const HMGrid& hm, const PhiSolution* phi);

// Q_N(z,z)/N, the finite-N eigenvalue density.
double density_from_kernel(const ModelParams& p, int N_level, double z);

}  // namespace quartic
