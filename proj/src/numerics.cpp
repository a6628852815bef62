#include "quartic/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quartic {

GaussLegendre::GaussLegendre(int n) {
    if (n < 2) throw std::invalid_argument("GaussLegendre: n < 2");
    x.resize(n);
    w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n with the Chebyshev-based initial guess.
        double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
    }
}

const GaussLegendre& gl16() {
    static const GaussLegendre rule(16);
    return rule;
}

const GaussLegendre& gl32() {
    static const GaussLegendre rule(32);
    return rule;
}

double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       int panels, const GaussLegendre& gl) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        double s = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(c + 0.5 * h * gl.x[i]);
        sum += 0.5 * h * s;
    }
    return sum;
}

double integrate_to_tol(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double* achieved, int max_doublings) {
    int panels = 4;
    double prev = panel_integrate(f, a, b, panels);
    double rel_err = INFINITY;
    for (int k = 0; k < max_doublings; ++k) {
        panels *= 2;
        const double cur = panel_integrate(f, a, b, panels);
        const double scale = std::max(std::abs(cur), 1e-300);
        rel_err = std::abs(cur - prev) / scale;
        if (rel_err <= rel_tol) {
            if (achieved) *achieved = rel_err;
            return cur;
        }
        prev = cur;
    }
    if (achieved) *achieved = rel_err;
    std::ostringstream msg;
    msg << "integrate_to_tol: no convergence on [" << a << "," << b
        << "]; achieved relative estimate " << rel_err << " vs requested " << rel_tol;
    throw std::runtime_error(msg.str());
}

cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                       int panels, const GaussLegendre& gl) {
    const cplx d = (z1 - z0) / static_cast<double>(panels);
    cplx sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const cplx c = z0 + (static_cast<double>(p) + 0.5) * d;
        cplx s = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(c + 0.5 * d * gl.x[i]);
        sum += 0.5 * d * s;
    }
    return sum;
}

void solve_tridiag(std::vector<double> dl, std::vector<double> d,
                   std::vector<double> du, std::vector<double>& rhs) {
    const size_t n = d.size();
    if (n == 0) return;
    if (dl.size() != n - 1 || du.size() != n - 1 || rhs.size() != n)
        throw std::invalid_argument("solve_tridiag: size mismatch");
    std::vector<double> du2(n >= 2 ? n - 2 : 0, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
            const double m = dl[i] / d[i];
            d[i + 1] -= m * du[i];
            rhs[i + 1] -= m * rhs[i];
            dl[i] = 0.0;
        } else {
            // Swap rows i and i+1.
            const double m = d[i] / dl[i];
            d[i] = dl[i];
            double tmp = d[i + 1];
            d[i + 1] = du[i] - m * tmp;
            du[i] = tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du2[i];
            }
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= m * rhs[i];
        }
    }
    if (d[n - 1] == 0.0) throw std::runtime_error("solve_tridiag: zero pivot");
    rhs[n - 1] /= d[n - 1];
    if (n >= 2) {
        rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
        for (size_t ir = n - 1; ir-- > 1;) {
            const size_t i = ir - 1;
            double v = rhs[i] - du[i] * rhs[i + 1];
            if (i + 2 < n) v -= du2[i] * rhs[i + 2];
            rhs[i] = v / d[i];
        }
    }
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::domain_error("fit_loglog_slope: nonpositive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double hermite_eval(double x0, double x1, double f0, double f1, double d0, double d1,
                    double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 +
           (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * h * d1;
}

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

double CMat2::max_abs() const {
    return std::max(std::max(std::abs(m11), std::abs(m12)),
                    std::max(std::abs(m21), std::abs(m22)));
}

}  // namespace quartic
