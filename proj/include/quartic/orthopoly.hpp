#pragma once

#include <complex>
#include <vector>

#include "quartic/model.hpp"
#include "quartic/numerics.hpp"

namespace quartic {

// Discrete inner product for the weight exp(-N V). Nodes are composite
// Gauss-Legendre on [-L, L]; half_weight holds exp(-N (V - V_min)/2) at the
// nodes so products of psi values never leave the representable range.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;      // quadrature weights only
    std::vector<double> half_weight;  // exp(-N(V - Vmin)/2)
    double L = 0.0;
    double target_tol = 0.0;
    double log_weight_scale = 0.0;  // -N * V_min, the factored-out magnitude
};

QuadratureRule build_quadrature(const ModelParams& p, int n_max, double tol);

struct RecurrenceData {
    ModelParams params;
    std::vector<double> R;      // R[0] = 0
    std::vector<double> log_h;  // natural log of h_n
};

// Discretized Stieltjes (Lanczos with full reorthogonalization) on the rule.
// Validated by node doubling to tol; throws std::runtime_error when the Gram
// matrix of the generated basis drifts above 1e-8 off-diagonal.
RecurrenceData stieltjes_recurrence(const ModelParams& p, int n_max, double tol);

// psi values with an explicit log-magnitude carried alongside, so deep-tail
// evaluations at large N stay representable: psi = v * exp(log_scale).
struct ScaledPsiPair {
    double v_n = 0.0;
    double v_nm1 = 0.0;
    double log_scale = 0.0;
};

class PsiEvaluator {
  public:
    PsiEvaluator(ModelParams p, RecurrenceData rec, QuadratureRule rule);

    const ModelParams& params() const { return params_; }
    const RecurrenceData& recurrence() const { return rec_; }
    const QuadratureRule& rule() const { return rule_; }
    int n_max() const { return static_cast<int>(rec_.R.size()) - 1; }

    // psi_n(z) by upward recurrence; rescales internally when magnitudes pass
    // 1e150 and reapplies the prefactor at the end.
    std::complex<double> psi(int n, std::complex<double> z) const;
    // (psi_n, psi_{n-1}) at real z in scaled form.
    ScaledPsiPair psi_pair_scaled(int n, double z) const;
    // (psi_n, psi_n') at real z (usable where no under/overflow occurs).
    void psi_with_deriv(int n, double z, double& f, double& fp) const;

    // Christoffel-Darboux kernel Q_N(z, w); confluent form within 1e-6.
    double cd_kernel(int N_level, double z, double w) const;
    // Direct partial sum of psi_k(z) psi_k(w), k < N_level (test oracle).
    double kernel_direct_sum(int N_level, double z, double w) const;
    // det(Q_N(z_i, z_j)); throws std::invalid_argument on coincident points.
    double correlation(int N_level, const std::vector<double>& points) const;

    // Gram matrix max off-diagonal / diagonal-deviation for n,m <= k.
    double orthonormality_defect(int k) const;
    // Quadrature of f over the rule.
    double integrate(const std::function<double(double)>& f) const;

  private:
    ModelParams params_;
    RecurrenceData rec_;
    QuadratureRule rule_;
    double log_h0_ = 0.0;  // true log h_0
};

// Lax-pair matrices for the quartic weight.
CMat2 lax_A(const ModelParams& p, const std::vector<double>& R, int n, cplx z);
Mat2 lax_A_real(const ModelParams& p, const std::vector<double>& R, int n, double z);
CMat2 lax_U(const std::vector<double>& R, int n, cplx z);

struct LaxResiduals {
    double compatibility = 0.0;  // max ||U' - N(A_{n+1}U - U A_n)||
    double psi_system = 0.0;     // max ||psi' - N A psi||
};

LaxResiduals lax_residuals(const PsiEvaluator& ev, int n,
                           const std::vector<cplx>& z_grid);
LaxResiduals lax_residuals_for(const ModelParams& p, const std::vector<double>& R,
                               const PsiEvaluator& ev, int n,
                               const std::vector<cplx>& z_grid);

}  // namespace quartic
