#include "quartic/psi_cp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quartic {

namespace {

struct CpCoeffs {
    double u, v, w, D;
    double sgn;  // (-1)^n
};

CpCoeffs coeffs_at(const HMGrid& hm, double y, int n_parity) {
    CpCoeffs c;
    c.u = hm.u_at(y);
    c.w = hm.up_at(y);
    c.v = y + 2.0 * c.u * c.u;
    c.D = hm.D_at(y);
    c.sgn = (n_parity % 2 == 0) ? 1.0 : -1.0;
    return c;
}

// Taylor one-step integrator for Phi' = A(z) Phi. The coefficients are
// polynomial in z, so the Taylor recurrence
//   (k+1) c_{k+1} = B0 c_k + B1 c_{k-1} + B2 c_{k-2}
// is exact; order 12 with |h| * omega <= 1/2 keeps the local error near
// machine precision.
struct TaylorStepper {
    double a1_diag;       // coefficient of z on the diagonal
    double a0_12, a0_21;  // constant parts of the off-diagonal entries
    double y_abs;

    TaylorStepper(const CpCoeffs& c, double y)
        : a1_diag(c.sgn * 4.0 * c.u),
          a0_12(c.sgn * 2.0 * c.w + c.v),
          a0_21(c.sgn * 2.0 * c.w - c.v),
          y_abs(std::abs(y)) {}

    Mat2 A(double z) const {
        return {a1_diag * z, 4.0 * z * z + a0_12, -4.0 * z * z + a0_21, -a1_diag * z};
    }

    void step(double z0, double h, double& v1, double& v2) const {
        constexpr int K = 12;
        const Mat2 B0 = A(z0);
        double c1[K + 1], c2[K + 1];
        c1[0] = v1;
        c2[0] = v2;
        for (int k = 0; k < K; ++k) {
            double r1 = B0.m11 * c1[k] + B0.m12 * c2[k];
            double r2 = B0.m21 * c1[k] + B0.m22 * c2[k];
            if (k >= 1) {
                r1 += a1_diag * c1[k - 1] + 8.0 * z0 * c2[k - 1];
                r2 += -8.0 * z0 * c1[k - 1] - a1_diag * c2[k - 1];
            }
            if (k >= 2) {
                r1 += 4.0 * c2[k - 2];
                r2 += -4.0 * c1[k - 2];
            }
            c1[k + 1] = r1 / (k + 1);
            c2[k + 1] = r2 / (k + 1);
        }
        double s1 = 0.0, s2 = 0.0;
        for (int k = K; k >= 0; --k) {
            s1 = s1 * h + c1[k];
            s2 = s2 * h + c2[k];
        }
        v1 = s1;
        v2 = s2;
    }

    double local_rate(double z) const {
        return 4.0 * z * z + y_abs + std::abs(a0_12) + std::abs(a1_diag * z) + 2.0;
    }
};

// Real-axis initializer: c(phi) plus the 1/s and 1/s^2 matrix corrections
// (the sector coefficients m1, m2 transported to the real axis; the D here is
// the same integral int_y^inf u^2 as in the turning-point discriminant).
void init_values(const CpCoeffs& c, double y, int phase_parity, double s,
                 bool leading_only, double& v1, double& v2) {
    const double phi = 4.0 / 3.0 * s * s * s + y * s - 0.5 * M_PI * phase_parity;
    const double co = std::cos(phi), si = std::sin(phi);
    v1 = co;
    v2 = -si;
    if (leading_only) return;
    const double sg = c.sgn;
    // M1 = -sg (u/2) sigma1 + (D/2) J,  J = [0 1; -1 0]
    const double m1_12 = -sg * 0.5 * c.u + 0.5 * c.D;
    const double m1_21 = -sg * 0.5 * c.u - 0.5 * c.D;
    // M2 = sg ((w + u D)/4) sigma3 + ((u^2 - D^2)/8) I
    const double m2_d = sg * 0.25 * (c.w + c.u * c.D);
    const double m2_i = 0.125 * (c.u * c.u - c.D * c.D);
    // known sigma1 part of M3 (the I/J parts sit one more order down)
    const double m3_s1 = sg * c.u * (c.v + y) / 16.0;
    const double s3 = s * s * s;
    v1 += (m1_12 * (-si)) / s + ((m2_i + m2_d) * co) / (s * s) + m3_s1 * (-si) / s3;
    v2 += (m1_21 * co) / s + ((m2_i - m2_d) * (-si)) / (s * s) + m3_s1 * co / s3;
}

}  // namespace

Mat2 cp_matrix_A(double z, double y, int n_parity, const HMGrid& hm) {
    const CpCoeffs c = coeffs_at(hm, y, n_parity);
    return {c.sgn * 4.0 * c.u * z, 4.0 * z * z + c.sgn * 2.0 * c.w + c.v,
            -4.0 * z * z + c.sgn * 2.0 * c.w - c.v, -c.sgn * 4.0 * c.u * z};
}

Mat2 cp_matrix_B(double z, double y, int n_parity, const HMGrid& hm) {
    const double u = hm.u_at(y);
    const double sg = (n_parity % 2 == 0) ? 1.0 : -1.0;
    return {sg * u, z, -z, -sg * u};
}

PhiSolution solve_phi(const HMGrid& hm, double y, int n_parity, double Z_far,
                      long steps, const SolvePhiOptions& opt) {
    if (Z_far < 8.0) throw std::domain_error("solve_phi: Z_far >= 8 required");
    if (n_parity < 0 || n_parity > 3)
        throw std::domain_error("solve_phi: n_parity in {0,1,2,3}");
    const CpCoeffs c = coeffs_at(hm, y, n_parity);
    const TaylorStepper stepper(c, y);

    // Output grid: uniform spacing fine enough for Hermite interpolation in
    // the |z| <= 4 window where the kernel evaluates.
    const double dz = 0.002;
    const int m = static_cast<int>(std::ceil(Z_far / dz));
    PhiSolution sol;
    sol.y = y;
    sol.n_parity = n_parity;
    sol.Z_far = m * dz;
    sol.a1_diag = stepper.a1_diag;
    sol.a0_12 = stepper.a0_12;
    sol.a0_21 = stepper.a0_21;

    const double h_user =
        (steps > 0) ? (2.0 * sol.Z_far / static_cast<double>(steps)) : dz;

    // March one half-line from side*Z_far to 0, storing at grid nodes.
    auto march_half = [&](double side, int phase_parity, std::vector<double>& out1,
                          std::vector<double>& out2) {
        double z = side * sol.Z_far;
        double v1, v2;
        init_values(c, y, phase_parity, z, opt.leading_order_init, v1, v2);
        out1.assign(m + 1, 0.0);
        out2.assign(m + 1, 0.0);
        out1[m] = v1;
        out2[m] = v2;
        for (int node = m; node >= 1; --node) {
            const double z_next = side * (node - 1) * dz;
            while (std::abs(z - z_next) > 1e-14) {
                const double rate = stepper.local_rate(z);
                double h = std::min(0.5 / rate, std::min(dz, h_user));
                h = std::min(h, std::abs(z_next - z));
                const double dir = (z_next > z) ? 1.0 : -1.0;
                stepper.step(z, dir * h, v1, v2);
                z += dir * h;
            }
            z = z_next;
            out1[node - 1] = v1;
            out2[node - 1] = v2;
        }
    };

    std::vector<double> r1, r2, l1, l2, q1, q2, ql1, ql2;
    march_half(+1.0, n_parity, r1, r2);
    march_half(-1.0, n_parity, l1, l2);
    // Partner: same system, quarter-period phase shift in the initializer.
    march_half(+1.0, n_parity + 1, q1, q2);
    march_half(-1.0, n_parity + 1, ql1, ql2);

    // Matching defect of the two half-line solutions at 0. The integration is
    // parity-equivariant, so this equals twice the parity-forbidden component
    // of the computed solution (phi2(0) for even n, phi1(0) for odd) -- the
    // part of the initialization error the parity constraint can detect.
    const double sg = c.sgn;
    sol.mismatch = std::max(std::abs(l1[0] - r1[0]), std::abs(l2[0] - r2[0]));
    sol.insufficient_resolution = sol.mismatch > 0.05;

    // Raw halves on the symmetric grid; the parity test in the suite measures
    // the genuine defect between them.
    sol.z_grid.resize(2 * m + 1);
    sol.phi1.resize(2 * m + 1);
    sol.phi2.resize(2 * m + 1);
    sol.p1.resize(2 * m + 1);
    sol.p2.resize(2 * m + 1);
    for (int i = 0; i <= 2 * m; ++i) {
        const int k = i - m;
        sol.z_grid[i] = k * dz;
        if (k >= 0) {
            sol.phi1[i] = r1[k];
            sol.phi2[i] = r2[k];
            sol.p1[i] = q1[k];
            sol.p2[i] = q2[k];
        } else {
            sol.phi1[i] = l1[-k];
            sol.phi2[i] = l2[-k];
            sol.p1[i] = ql1[-k];
            sol.p2[i] = ql2[-k];
        }
    }
    // Joint value: average of the right half and the parity image of the
    // left. The marches mirror each other, so the parity-forbidden component
    // (phi2(0) for even n, phi1(0) for odd) survives at mismatch/2 -- it is
    // the residual normalization ambiguity the certificate quantifies.
    sol.phi1[m] = 0.5 * (r1[0] + sg * l1[0]);
    sol.phi2[m] = 0.5 * (r2[0] - sg * l2[0]);

    sol.dphi1.resize(2 * m + 1);
    sol.dphi2.resize(2 * m + 1);
    for (int i = 0; i <= 2 * m; ++i) {
        const Mat2 A = stepper.A(sol.z_grid[i]);
        sol.dphi1[i] = A.m11 * sol.phi1[i] + A.m12 * sol.phi2[i];
        sol.dphi2[i] = A.m21 * sol.phi1[i] + A.m22 * sol.phi2[i];
    }
    return sol;
}

Mat2 PhiSolution::system_matrix(double z) const {
    return {a1_diag * z, 4.0 * z * z + a0_12, -4.0 * z * z + a0_21, -a1_diag * z};
}

namespace {

int locate(const PhiSolution& s, double z) {
    if (z < s.z_grid.front() - 1e-12 || z > s.z_grid.back() + 1e-12)
        throw std::domain_error("PhiSolution: z outside stored grid");
    const double dz = s.z_grid[1] - s.z_grid[0];
    int i = static_cast<int>((z - s.z_grid.front()) / dz);
    i = std::max(0, std::min(static_cast<int>(s.z_grid.size()) - 2, i));
    return i;
}

int nearest_index(const PhiSolution& s, double z) {
    const double dz = s.z_grid[1] - s.z_grid[0];
    int i = static_cast<int>(std::lround((z - s.z_grid.front()) / dz));
    return std::max(0, std::min(static_cast<int>(s.z_grid.size()) - 1, i));
}

}  // namespace

Vec2 PhiSolution::eval(double z) const {
    const int i = locate(*this, z);
    return {hermite_eval(z_grid[i], z_grid[i + 1], phi1[i], phi1[i + 1], dphi1[i],
                         dphi1[i + 1], z),
            hermite_eval(z_grid[i], z_grid[i + 1], phi2[i], phi2[i + 1], dphi2[i],
                         dphi2[i + 1], z)};
}

Vec2 PhiSolution::eval_partner(double z) const {
    const int i = locate(*this, z);
    const Mat2 A0 = system_matrix(z_grid[i]);
    const Mat2 A1 = system_matrix(z_grid[i + 1]);
    const double d10 = A0.m11 * p1[i] + A0.m12 * p2[i];
    const double d20 = A0.m21 * p1[i] + A0.m22 * p2[i];
    const double d11 = A1.m11 * p1[i + 1] + A1.m12 * p2[i + 1];
    const double d21 = A1.m21 * p1[i + 1] + A1.m22 * p2[i + 1];
    return {hermite_eval(z_grid[i], z_grid[i + 1], p1[i], p1[i + 1], d10, d11, z),
            hermite_eval(z_grid[i], z_grid[i + 1], p2[i], p2[i + 1], d20, d21, z)};
}

Vec2 PhiSolution::eval_deriv(double z) const {
    const Vec2 f = eval(z);
    const Mat2 A = system_matrix(z);
    return {A.m11 * f.a + A.m12 * f.b, A.m21 * f.a + A.m22 * f.b};
}

double PhiSolution::nearest_node(double z) const { return z_grid[nearest_index(*this, z)]; }
double PhiSolution::node_value1(double z) const { return phi1[nearest_index(*this, z)]; }
double PhiSolution::node_value2(double z) const { return phi2[nearest_index(*this, z)]; }

double critical_kernel(const PhiSolution& phi, double u, double v) {
    if (std::abs(u - v) < 1e-6) {
        const double zm = 0.5 * (u + v);
        const Vec2 f = phi.eval(zm);
        const Vec2 d = phi.eval_deriv(zm);
        return (d.a * f.b - d.b * f.a) / M_PI;
    }
    const Vec2 fu = phi.eval(u);
    const Vec2 fv = phi.eval(v);
    return (fu.a * fv.b - fv.a * fu.b) / (M_PI * (u - v));
}

double phi_asymptotic_defect(const PhiSolution& phi, double z) {
    if (std::abs(z) < 3.0)
        throw std::domain_error("phi_asymptotic_defect: |z| >= 3 required");
    const double zn = phi.nearest_node(z);
    const double arg = 4.0 / 3.0 * zn * zn * zn + phi.y * zn - 0.5 * M_PI * phi.n_parity;
    return std::abs(phi.node_value1(zn) - std::cos(arg)) +
           std::abs(phi.node_value2(zn) + std::sin(arg));
}

}  // namespace quartic
