#pragma once

#include <vector>

#include "quartic/numerics.hpp"
#include "quartic/painleve2.hpp"

namespace quartic {

// Model system at the critical point: Phi' = A(z) Phi with
//   A = [ (-1)^n 4u z              4z^2 + (-1)^n 2w + v ]
//       [ -4z^2 + (-1)^n 2w - v   -(-1)^n 4u z          ]
// and the y-flow matrix B = [ (-1)^n u, z; -z, -(-1)^n u ].
Mat2 cp_matrix_A(double z, double y, int n_parity, const HMGrid& hm);
Mat2 cp_matrix_B(double z, double y, int n_parity, const HMGrid& hm);

struct PhiSolution {
    double y = 0.0;
    int n_parity = 0;
    double Z_far = 0.0;
    std::vector<double> z_grid;  // symmetric, uniform
    std::vector<double> phi1, phi2, dphi1, dphi2;
    // Independent partner (same system, quarter-period phase) for Wronskian
    // diagnostics.
    std::vector<double> p1, p2;
    double mismatch = 0.0;  // max-norm matching defect at z = 0
    bool insufficient_resolution = false;
    // coefficients of the system matrix, for interpolation slopes
    double a1_diag = 0.0, a0_12 = 0.0, a0_21 = 0.0;

    Mat2 system_matrix(double z) const;
    // Cubic Hermite interpolation off the stored grid.
    Vec2 eval(double z) const;
    Vec2 eval_partner(double z) const;
    Vec2 eval_deriv(double z) const;
    double node_value1(double z) const;  // nearest-node phi1 (no interpolation)
    double node_value2(double z) const;
    double nearest_node(double z) const;
};

struct SolvePhiOptions {
    // Leading-order initialization only (drops the 1/z and 1/z^2 matrix
    // corrections at Z_far); kept for experiments.
    bool leading_order_init = false;
};

// Integrates the model system inward from +-Z_far, initialized with the
// real-axis asymptotics cos/-sin(4z^3/3 + y z - pi n/2) plus (by default) the
// first two inverse-power corrections. mismatch > 0.05 flags insufficient
// Z_far/steps.
PhiSolution solve_phi(const HMGrid& hm, double y, int n_parity, double Z_far,
                      long steps, const SolvePhiOptions& opt = {});

// Q_c(u,v;y) per the critical-kernel determinant formula; confluent form for
// |u - v| < 1e-6.
double critical_kernel(const PhiSolution& phi, double u, double v);

// |Phi1 - cos(...)| + |Phi2 + sin(...)| at the stored node nearest z.
double phi_asymptotic_defect(const PhiSolution& phi, double z);

}  // namespace quartic
