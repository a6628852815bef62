#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quartic/numerics.hpp"
#include "quartic/painleve2.hpp"

namespace quartic {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Numerov residual in the u'' scale at interior node i:
//   (u_{i+1} - 2u_i + u_{i-1})/h^2 - (f_{i+1} + 10 f_i + f_{i-1})/12,
// f(y,u) = y u + lam*2u^3. Long double accumulation keeps the rounding floor
// of the divided difference below the 1e-10 residual contract.
double numerov_residual_norm(const std::vector<double>& y, double h, double lam,
                             const std::vector<double>& w) {
    const int n = static_cast<int>(w.size()) - 2;
    const long double ih2 = 1.0L / (static_cast<long double>(h) * h);
    auto f = [&](int i, long double ui) {
        return static_cast<long double>(y[i]) * ui + lam * 2.0L * ui * ui * ui;
    };
    long double m = 0.0L;
    for (int i = 1; i <= n; ++i) {
        const long double r =
            (static_cast<long double>(w[i + 1]) - 2.0L * w[i] + w[i - 1]) * ih2 -
            (f(i + 1, w[i + 1]) + 10.0L * f(i, w[i]) + f(i - 1, w[i - 1])) / 12.0L;
        m = std::max(m, std::abs(r));
    }
    return static_cast<double>(m);
}

// Damped Newton for the Numerov discretization with fixed end values.
// u has mesh+1 entries including the boundaries; only 1..mesh-1 move.
// Returns false if Newton stalls.
bool newton_solve(const std::vector<double>& y, double h, double lam,
                  std::vector<double>& u, double tol, int max_iter) {
    const int n = static_cast<int>(u.size()) - 2;  // unknowns
    // Rounding of the stored u enters the divided difference at eps*|u|/h^2;
    // accept convergence once the residual reaches that floor.
    const double floor_resid =
        std::max(5e-11, 32.0 * 2.2e-16 * max_abs(u) / (h * h));
    std::vector<double> res(n), du(n), dl, d, dsup;
    const double ih2 = 1.0 / (h * h);
    auto f = [&](int i, double ui) { return y[i] * ui + lam * 2.0 * ui * ui * ui; };
    auto fu = [&](int i, double ui) { return y[i] + lam * 6.0 * ui * ui; };
    auto rnorm = [&](const std::vector<double>& w) {
        return numerov_residual_norm(y, h, lam, w);
    };

    for (int it = 0; it < max_iter; ++it) {
        for (int i = 1; i <= n; ++i) {
            res[i - 1] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * ih2 -
                         (f(i + 1, u[i + 1]) + 10.0 * f(i, u[i]) + f(i - 1, u[i - 1])) /
                             12.0;
        }
        dl.assign(n - 1, 0.0);
        dsup.assign(n - 1, 0.0);
        d.assign(n, 0.0);
        for (int i = 1; i <= n; ++i) {
            d[i - 1] = -2.0 * ih2 - 10.0 / 12.0 * fu(i, u[i]);
            if (i < n) dsup[i - 1] = ih2 - fu(i + 1, u[i + 1]) / 12.0;
            if (i > 1) dl[i - 2] = ih2 - fu(i - 1, u[i - 1]) / 12.0;
        }
        du.assign(res.begin(), res.end());
        solve_tridiag(dl, d, dsup, du);  // J*step = res, step applied with minus

        const double base = rnorm(u);
        double alpha = 1.0;
        std::vector<double> trial(u);
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (int i = 1; i <= n; ++i) trial[i] = u[i] - alpha * du[i - 1];
            if (rnorm(trial) < base) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) return rnorm(u) <= floor_resid;
        u.swap(trial);
        if (alpha * max_abs(du) <= tol && rnorm(u) <= floor_resid) return true;
    }
    return rnorm(u) <= floor_resid;
}

}  // namespace

double hm_max_collocation_residual(const HMGrid& hm) {
    return numerov_residual_norm(hm.y, hm.h, 1.0, hm.u);
}

HMGrid solve_hastings_mcleod(double y_min, double y_max, int mesh, double tol) {
    if (y_min > -8.0 || y_max < 6.0)
        throw std::domain_error("solve_hastings_mcleod: need y_min <= -8 and y_max >= 6");
    if (mesh < 400) throw std::domain_error("solve_hastings_mcleod: mesh >= 400");
    if (!(tol > 0.0)) throw std::domain_error("solve_hastings_mcleod: tol > 0");

    HMGrid hm;
    hm.y_min = y_min;
    hm.y_max = y_max;
    hm.h = (y_max - y_min) / mesh;
    hm.y.resize(mesh + 1);
    for (int i = 0; i <= mesh; ++i) hm.y[i] = y_min + i * hm.h;

    // Boundary values: left two-term tail, right pure Ai.
    const double ua = std::sqrt(-0.5 * y_min) * (1.0 + 1.0 / (4.0 * y_min * y_min * y_min));
    double ub, ubp;
    airy_real(y_max, ub, ubp);
    hm.boundary_error_left =
        std::sqrt(-0.5 * y_min) / std::pow(std::abs(y_min), 6.0);

    // Smooth positive initial guess with the right tails on both sides.
    std::vector<double> u(mesh + 1);
    u.front() = ua;
    u.back() = ub;
    for (int i = 1; i < mesh; ++i) {
        const double yy = hm.y[i];
        u[i] = std::sqrt(0.5 * (std::sqrt(yy * yy + 2.0) - yy)) / std::sqrt(2.0);
    }

    if (!newton_solve(hm.y, hm.h, 1.0, u, tol, 60)) {
        // Continuation in the cubic term from the Airy-scaled linearization.
        std::vector<double> w(mesh + 1, 0.0);
        w.front() = ua;
        w.back() = ub;
        bool ok = true;
        for (double lam : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
            ok = newton_solve(hm.y, hm.h, lam, w, tol, 80);
            if (!ok) break;
        }
        if (!ok) throw std::runtime_error("solve_hastings_mcleod: Newton failed");
        u.swap(w);
    }

    hm.u = u;
    const int n = mesh;

    // u' by 5-point central differences (one-sided 5-point at the ends).
    hm.up.resize(n + 1);
    const double h = hm.h;
    for (int i = 2; i <= n - 2; ++i)
        hm.up[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
    auto onesided = [&](int i, int s) {
        // 5-point one-sided derivative, s = +1 forward / -1 backward.
        return s * (-25.0 * u[i] + 48.0 * u[i + s] - 36.0 * u[i + 2 * s] +
                    16.0 * u[i + 3 * s] - 3.0 * u[i + 4 * s]) / (12.0 * h);
    };
    hm.up[0] = onesided(0, +1);
    hm.up[1] = onesided(1, +1);
    hm.up[n - 1] = onesided(n - 1, -1);
    hm.up[n] = onesided(n, -1);

    hm.v.resize(n + 1);
    for (int i = 0; i <= n; ++i) hm.v[i] = hm.y[i] + 2.0 * u[i] * u[i];

    // D(y) = int_y^inf u^2 by backward composite Simpson; beyond y_max use the
    // Ai^2 tail D ~ e^{-(4/3) y^{3/2}}/(8 pi y).
    hm.D.resize(n + 1);
    const double tail =
        std::exp(-4.0 / 3.0 * std::pow(y_max, 1.5)) / (8.0 * M_PI * y_max);
    hm.D[n] = tail;
    for (int i = n - 2; i >= 0; i -= 2) {
        const double s = h / 3.0 *
                         (u[i] * u[i] + 4.0 * u[i + 1] * u[i + 1] + u[i + 2] * u[i + 2]);
        hm.D[i] = hm.D[i + 2] + s;
    }
    // Odd-offset nodes: Simpson pair ending with a 3/8-style closure.
    for (int i = n - 1; i >= 0; i -= 2) {
        if (i + 2 <= n) {
            const double s = h / 3.0 * (u[i] * u[i] + 4.0 * u[i + 1] * u[i + 1] +
                                        u[i + 2] * u[i + 2]);
            hm.D[i] = hm.D[i + 2] + s;
        } else {
            // trapezoid + correction on the final single interval
            const double s = 0.5 * h * (u[i] * u[i] + u[i + 1] * u[i + 1]) -
                             h * h / 12.0 *
                                 (2.0 * u[i + 1] * hm.up[i + 1] - 2.0 * u[i] * hm.up[i]);
            hm.D[i] = hm.D[i + 1] + s;
        }
    }

    hm.q.resize(n + 1);
    for (int i = 0; i <= n; ++i)
        hm.q[i] = (hm.v[i] * hm.v[i] - 4.0 * hm.up[i] * hm.up[i]) / 16.0;

    return hm;
}

double HMGrid::clamp_check(double yy) const {
    if (yy < y_min - 1e-9 || yy > y_max + 1e-9)
        throw std::domain_error("HMGrid: y outside tabulated range");
    return std::min(std::max(yy, y_min), y_max);
}

double HMGrid::u_at(double yy) const {
    const double t = clamp_check(yy);
    size_t i = static_cast<size_t>((t - y_min) / h);
    if (i >= u.size() - 1) i = u.size() - 2;
    return hermite_eval(y[i], y[i + 1], u[i], u[i + 1], up[i], up[i + 1], t);
}

double HMGrid::up_at(double yy) const {
    const double t = clamp_check(yy);
    size_t i = static_cast<size_t>((t - y_min) / h);
    if (i >= u.size() - 1) i = u.size() - 2;
    auto upp = [&](size_t k) { return y[k] * u[k] + 2.0 * u[k] * u[k] * u[k]; };
    return hermite_eval(y[i], y[i + 1], up[i], up[i + 1], upp(i), upp(i + 1), t);
}

double HMGrid::D_at(double yy) const {
    const double t = clamp_check(yy);
    size_t i = static_cast<size_t>((t - y_min) / h);
    if (i >= u.size() - 1) i = u.size() - 2;
    return hermite_eval(y[i], y[i + 1], D[i], D[i + 1], -u[i] * u[i], -u[i + 1] * u[i + 1],
                        t);
}

TurningPoints turning_points(const HMGrid& hm, double y) {
    const double p = 0.5 * y;
    const double q = hm.q_at(y);
    const double disc = p * p - 4.0 * q;
    TurningPoints tp;
    tp.discriminant = disc;
    const double r = std::sqrt(std::max(disc, 0.0));
    tp.s1_sq = 0.5 * (-p - r);
    tp.s2_sq = 0.5 * (-p + r);
    if (tp.s1_sq > tp.s2_sq) std::swap(tp.s1_sq, tp.s2_sq);
    return tp;
}

double find_y0(const HMGrid& hm) {
    // q is increasing on y >= 0 with q(0) < 0; bracket the sign change.
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (double yy = 0.25; yy <= hm.y_max; yy += 0.25) {
        if (hm.q_at(yy) > 0.0) {
            hi = yy;
            lo = yy - 0.25;
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("find_y0: no sign change of q on y > 0");
    // bisection to a short bracket, then secant
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hm.q_at(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double a = lo, b = hi, fa = hm.q_at(a), fb = hm.q_at(b);
    for (int it = 0; it < 50 && std::abs(b - a) > 1e-14; ++it) {
        const double c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        fb = hm.q_at(b);
        if (std::abs(fb) < 1e-16) break;
    }
    return b;
}

}  // namespace quartic
