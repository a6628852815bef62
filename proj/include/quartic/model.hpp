#pragma once

#include <stdexcept>
#include <vector>

namespace quartic {

// Quartic potential V(z) = (t/2) z^2 + (g/4) z^4 with weight exp(-N V).
struct ModelParams {
    double t = -1.0;
    double g = 1.0;
    int N = 1;

    ModelParams() = default;
    ModelParams(double t_, double g_, int N_) : t(t_), g(g_), N(N_) {
        if (!(g > 0.0)) throw std::domain_error("ModelParams: g must be positive");
        if (N < 1) throw std::domain_error("ModelParams: N must be >= 1");
    }

    double potential(double z) const {
        const double z2 = z * z;
        return 0.5 * t * z2 + 0.25 * g * z2 * z2;
    }
    double potential_deriv(double z) const { return t * z + g * z * z * z; }
    // Minimum of V over the real line (attained at 0 for t >= 0, at +-sqrt(-t/g) else).
    double potential_min() const {
        if (t >= 0.0) return 0.0;
        return -t * t / (4.0 * g);
    }
};

// Closed-form constants of the critical point. t_c and lambda_c exist for all
// g > 0; the critical scales (z0, c0, c1, c2, C, c9) require t < 0 and the
// checked getters throw std::domain_error otherwise.
struct DerivedConstants {
    double t = 0.0, g = 1.0;
    double t_c = 0.0;       // -2 sqrt(g)
    double lambda_c = 0.0;  // t^2 / (4g)

    bool critical_scales_defined() const { return t < 0.0; }
    double z0() const;  // sqrt(-2t/g)
    double c0() const;  // (t^2/2g)^{1/3}
    double c1() const;  // (2|t|/g^2)^{1/3}
    double c2() const;  // (1/2)(1/(2|t|g))^{1/3}
    double C() const;   // (32/(|t| g))^{1/6}
    double c9() const;  // 2^{14/3} g^{2/3} / |t|^{4/3}
};

DerivedConstants derive_constants(const ModelParams& p);

enum class Regime { OneCut, Critical, TwoCut };

// Equilibrium-measure data. endpoints is {a} for one-cut/critical support
// [-a,a] and {b,a} (inner, outer) for the two-cut support [-a,-b] U [b,a].
struct EquilibriumDensity {
    Regime regime = Regime::OneCut;
    std::vector<double> endpoints;
    double b0 = 0.0;
    double b2 = 0.0;
};

Regime classify_regime(const ModelParams& p);
EquilibriumDensity equilibrium_density(const ModelParams& p);

// Density p(x) of the limiting eigenvalue distribution; 0 off the support.
double density(const ModelParams& p, double x);

// Integrates the density over its support; the result should be 1 up to the
// quadrature tolerance. Throws std::runtime_error when the quadrature fails,
// with the achieved estimate in the message.
double density_normalization(const ModelParams& p, double quad_tol);

}  // namespace quartic
