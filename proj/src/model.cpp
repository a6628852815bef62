#include "quartic/model.hpp"

#include <cmath>

#include "quartic/numerics.hpp"

namespace quartic {

namespace {
void require_negative_t(double t) {
    if (!(t < 0.0))
        throw std::domain_error("critical scale requested with t >= 0");
}
}  // namespace

double DerivedConstants::z0() const {
    require_negative_t(t);
    return std::sqrt(-2.0 * t / g);
}
double DerivedConstants::c0() const {
    require_negative_t(t);
    return std::cbrt(t * t / (2.0 * g));
}
double DerivedConstants::c1() const {
    require_negative_t(t);
    return std::cbrt(2.0 * std::abs(t) / (g * g));
}
double DerivedConstants::c2() const {
    require_negative_t(t);
    return 0.5 * std::cbrt(1.0 / (2.0 * std::abs(t) * g));
}
double DerivedConstants::C() const {
    require_negative_t(t);
    return std::pow(32.0 / (std::abs(t) * g), 1.0 / 6.0);
}
double DerivedConstants::c9() const {
    require_negative_t(t);
    return std::pow(2.0, 14.0 / 3.0) * std::pow(g, 2.0 / 3.0) /
           std::pow(std::abs(t), 4.0 / 3.0);
}

DerivedConstants derive_constants(const ModelParams& p) {
    DerivedConstants d;
    d.t = p.t;
    d.g = p.g;
    d.t_c = -2.0 * std::sqrt(p.g);
    d.lambda_c = p.t * p.t / (4.0 * p.g);
    return d;
}

Regime classify_regime(const ModelParams& p) {
    const double t_c = -2.0 * std::sqrt(p.g);
    const double tol = 1e-12 * std::max(1.0, std::abs(p.t));
    if (std::abs(p.t - t_c) <= tol) return Regime::Critical;
    return p.t > t_c ? Regime::OneCut : Regime::TwoCut;
}

EquilibriumDensity equilibrium_density(const ModelParams& p) {
    EquilibriumDensity e;
    e.regime = classify_regime(p);
    const double t = p.t, g = p.g;
    switch (e.regime) {
        case Regime::OneCut: {
            const double s = std::sqrt(t * t + 12.0 * g);
            e.endpoints = {std::sqrt((-2.0 * t + 2.0 * s) / (3.0 * g))};
            e.b2 = 0.5 * g;
            e.b0 = (t + 0.5 * s) / 3.0;
            break;
        }
        case Regime::Critical: {
            e.endpoints = {2.0 / std::pow(g, 0.25)};
            e.b2 = 0.5 * g;
            e.b0 = 0.0;
            break;
        }
        case Regime::TwoCut: {
            const double sg = std::sqrt(g);
            const double a = std::sqrt((2.0 * sg - t) / g);
            const double b = std::sqrt((-2.0 * sg - t) / g);
            e.endpoints = {b, a};
            e.b0 = 0.5 * g;
            e.b2 = 0.0;
            break;
        }
    }
    return e;
}

double density(const ModelParams& p, double x) {
    const EquilibriumDensity e = equilibrium_density(p);
    const double ax = std::abs(x);
    if (e.regime == Regime::TwoCut) {
        const double b = e.endpoints[0], a = e.endpoints[1];
        if (ax <= b || ax >= a) return 0.0;
        const double r = (a * a - x * x) * (x * x - b * b);
        return e.b0 / M_PI * ax * std::sqrt(std::max(r, 0.0));
    }
    const double a = e.endpoints[0];
    if (ax >= a) return 0.0;
    const double root = std::sqrt(std::max(a * a - x * x, 0.0));
    if (e.regime == Regime::Critical)
        return 0.5 * p.g / M_PI * x * x * root;
    return (e.b0 + e.b2 * x * x) / M_PI * root;
}

double density_normalization(const ModelParams& p, double quad_tol) {
    if (!(quad_tol > 0.0)) throw std::domain_error("density_normalization: quad_tol <= 0");
    const EquilibriumDensity e = equilibrium_density(p);
    double achieved = 0.0;
    // Trigonometric endpoint substitutions absorb the square-root vanishing
    // at the band edges, so the panel quadrature converges at full rate while
    // still sampling the public density() pointwise.
    if (e.regime == Regime::TwoCut) {
        const double b = e.endpoints[0], a = e.endpoints[1];
        const double c = 0.5 * (a * a + b * b), r = 0.5 * (a * a - b * b);
        auto f = [&](double th) {
            const double x = std::sqrt(c + r * std::sin(th));
            return density(p, x) * r * std::cos(th) / (2.0 * x);
        };
        return 2.0 * integrate_to_tol(f, -0.5 * M_PI, 0.5 * M_PI, quad_tol, &achieved);
    }
    const double a = e.endpoints[0];
    auto f = [&](double th) { return density(p, a * std::sin(th)) * a * std::cos(th); };
    return 2.0 * integrate_to_tol(f, 0.0, 0.5 * M_PI, quad_tol, &achieved);
}

}  // namespace quartic
