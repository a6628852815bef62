#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace quartic {

using cplx = std::complex<double>;

// Gauss-Legendre rule on [-1,1].
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
    explicit GaussLegendre(int n);
};

const GaussLegendre& gl16();
const GaussLegendre& gl32();

double panel_integrate(const std::function<double(double)>& f, double a, double b,
                       int panels, const GaussLegendre& gl = gl16());

// Panel-doubling integration; throws std::runtime_error (message carries the
// achieved estimate) if the doubling sequence fails to settle.
double integrate_to_tol(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double* achieved = nullptr,
                        int max_doublings = 14);

cplx integrate_segment(const std::function<cplx(cplx)>& f, cplx z0, cplx z1,
                       int panels, const GaussLegendre& gl = gl16());

// Tridiagonal solve with partial pivoting (LAPACK dgtsv scheme).
// dl: n-1 subdiagonal, d: n diagonal, du: n-1 superdiagonal. Overwrites rhs
// with the solution. Throws std::runtime_error on a zero pivot.
void solve_tridiag(std::vector<double> dl, std::vector<double> d,
                   std::vector<double> du, std::vector<double>& rhs);

// Least-squares slope of log(y) vs log(x); y entries must be positive.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Cubic Hermite on [x0,x1] from endpoint values and derivatives.
double hermite_eval(double x0, double x1, double f0, double f1, double d0, double d1,
                    double x);

struct Vec2 {
    double a = 0.0, b = 0.0;
};

struct Mat2 {
    double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;
    double det() const { return m11 * m22 - m12 * m21; }
    Vec2 operator*(const Vec2& v) const {
        return {m11 * v.a + m12 * v.b, m21 * v.a + m22 * v.b};
    }
    Mat2 operator*(const Mat2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Mat2 operator-(const Mat2& o) const {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    double max_abs() const;
};

struct CMat2 {
    cplx m11, m12, m21, m22;
    double max_abs() const;
    CMat2 operator*(const CMat2& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    CMat2 operator-(const CMat2& o) const {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
};

}  // namespace quartic
