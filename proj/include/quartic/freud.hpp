#pragma once

#include <optional>
#include <vector>

#include "quartic/model.hpp"
#include "quartic/painleve2.hpp"

namespace quartic {

enum class TrajectoryMethod { Forward, Variational, QuadratureOracle };

struct Trajectory {
    ModelParams params;
    std::vector<double> R;  // R[0] = 0
    TrajectoryMethod method = TrajectoryMethod::Forward;
    std::optional<int> blow_up_index;  // first index violating the R_n bound
};

struct FixedPoints {
    double lambda = 0.0;
    double branch_R = 0.0;
    double branch_L = 0.0;  // equals branch_R in the one-cut regime
};

// Upper bound (-t + sqrt(t^2 + 4 g n/N)) / (2g) on R_n.
double r_bound(const ModelParams& p, int n);

// R_1 = <z^2> for the weight exp(-N V), by panel-doubling quadrature to 1e-12.
double initial_R1(const ModelParams& p);

// String-equation residual max_n |R_n(t + g R_{n-1} + g R_n + g R_{n+1}) - n/N|
// over 1 <= n <= usable interior; per-index residuals optionally exported.
double string_residual(const Trajectory& tr, std::vector<double>* per_index = nullptr);

Trajectory forward_recursion(const ModelParams& p, int n_max);

// Two-branch / one-branch attractor values at a given lambda = n/N. The
// one-cut value is the positive root of 3 g R^2 + t R = lambda.
FixedPoints fixed_points(const ModelParams& p, double lambda);

// Interleaved-branch initial guess; parity chosen so index 1 is nearest to
// initial_R1.
Trajectory interleaved_init(const ModelParams& p, int n_max);

// Damped-Newton stationary point of
//   F({R}) = sum_n [ t R_n + (g/2) R_n^2 + g R_n R_{n+1} - (n/N) ln R_n ],
// R_0 = 0 fixed, far end closed on the one-cut fixed point. The system is
// solved on an internal buffer of extra indices past n_max so the closure
// error relaxes away before the reported range. Throws std::runtime_error
// only on a hard failure; non-convergence returns the best iterate (check
// string_residual).
Trajectory variational_solve(const ModelParams& p, int n_max, const Trajectory& init,
                             double tol);
Trajectory variational_solve(const ModelParams& p, int n_max, double tol);

// Analytic gradient of F at a trajectory (interior indices only); the finite
// difference check in the tests uses this.
std::vector<double> variational_gradient(const ModelParams& p,
                                         const std::vector<double>& R,
                                         double r_top_closure);

// Double-scaling ansatz value R_n^0 = |t|/(2g) + N^{-1/3} c1 (-1)^{n+1} u(y)
// + N^{-2/3} c2 v(y), y = c0^{-1} N^{2/3} (n/N - lambda_c).
double ansatz_R(const ModelParams& p, int n, const HMGrid& hm);

}  // namespace quartic
