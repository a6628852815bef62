#include "quartic/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace quartic {

#ifdef QUARTIC_EXTENDED_GRAM
using accum_t = long double;
#else
using accum_t = double;
#endif

namespace {

// Half-line cutoff: beyond L the half-weight times z^(2 n_max + 2) is below
// 1e-24 of the peak.
double support_cutoff(const ModelParams& p, int n_max) {
    const double vmin = p.potential_min();
    double L = std::max(1.5, std::sqrt(std::max(0.0, -p.t / p.g)) + 0.5);
    auto small_enough = [&](double x) {
        const double log_w = -0.5 * p.N * (p.potential(x) - vmin);
        return log_w + (2.0 * n_max + 2.0) * std::log(std::max(x, 1.0)) < -55.0;
    };
    while (!small_enough(L)) L *= 1.125;
    return L;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    accum_t s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += static_cast<accum_t>(a[i]) * static_cast<accum_t>(b[i]);
    return static_cast<double>(s);
}

struct StieltjesResult {
    std::vector<double> R;
    std::vector<double> log_h_scaled;  // relative to the factored weight scale
    std::vector<std::vector<double>> basis;  // q_k * sqrt(w * half_weight^2)
};

// One pass of the discretized Stieltjes procedure on a fixed rule. Basis
// vectors carry the square root of the full node weight, so plain dot
// products realize the L^2 inner product.
StieltjesResult stieltjes_on_rule(const QuadratureRule& rule,
                                  int n_max, bool keep_basis) {
    const size_t m = rule.nodes.size();
    std::vector<double> sq(m);
    for (size_t i = 0; i < m; ++i)
        sq[i] = std::sqrt(rule.weights[i]) * rule.half_weight[i];

    StieltjesResult out;
    out.R.assign(n_max + 1, 0.0);
    out.log_h_scaled.assign(n_max + 1, 0.0);

    std::vector<std::vector<double>> basis;
    std::vector<double> q0(sq), qm1(m, 0.0), s(m);
    const double h0 = dot(q0, q0);
    out.log_h_scaled[0] = std::log(h0);
    const double inv = 1.0 / std::sqrt(h0);
    for (double& x : q0) x *= inv;
    basis.push_back(q0);

    for (int n = 0; n < n_max; ++n) {
        for (size_t i = 0; i < m; ++i) s[i] = rule.nodes[i] * basis[n][i];
        if (n >= 1) {
            const double rn = std::sqrt(out.R[n]);
            for (size_t i = 0; i < m; ++i) s[i] -= rn * basis[n - 1][i];
        }
        // Full reorthogonalization, two sweeps.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (int k = n; k >= 0; --k) {
                const double c = dot(s, basis[k]);
                for (size_t i = 0; i < m; ++i) s[i] -= c * basis[k][i];
            }
        }
        const double r_next = dot(s, s);
        out.R[n + 1] = r_next;
        out.log_h_scaled[n + 1] = out.log_h_scaled[n] + std::log(r_next);
        const double ninv = 1.0 / std::sqrt(r_next);
        for (double& x : s) x *= ninv;
        basis.push_back(s);
    }
    if (keep_basis) out.basis = std::move(basis);
    return out;
}

}  // namespace

QuadratureRule build_quadrature(const ModelParams& p, int n_max, double tol) {
    QuadratureRule rule;
    rule.target_tol = tol;
    rule.L = support_cutoff(p, n_max);
    rule.log_weight_scale = -p.N * p.potential_min();

    // Panel count: resolve both the weight peaks and the polynomial
    // oscillation, then double until the ground-state norm settles.
    const double peak_scale = std::sqrt(p.N * (std::abs(p.t) + 3.0 * p.g * rule.L * rule.L));
    int panels = std::max({16, static_cast<int>(rule.L * peak_scale / 4.0),
                           static_cast<int>(n_max)});
    const GaussLegendre& gl = gl16();
    double prev = -1.0;
    for (int attempt = 0; attempt < 20; ++attempt) {
        rule.nodes.clear();
        rule.weights.clear();
        rule.half_weight.clear();
        const double h = 2.0 * rule.L / panels;
        const double vmin = p.potential_min();
        for (int j = 0; j < panels; ++j) {
            const double c = -rule.L + (j + 0.5) * h;
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double x = c + 0.5 * h * gl.x[i];
                rule.nodes.push_back(x);
                rule.weights.push_back(0.5 * h * gl.w[i]);
                rule.half_weight.push_back(std::exp(-0.5 * p.N * (p.potential(x) - vmin)));
            }
        }
        double norm = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            norm += rule.weights[i] * rule.half_weight[i] * rule.half_weight[i];
        if (prev > 0.0 && std::abs(norm - prev) <= tol * norm) return rule;
        prev = norm;
        panels *= 2;
    }
    throw std::runtime_error("build_quadrature: weight normalization did not settle");
}

RecurrenceData stieltjes_recurrence(const ModelParams& p, int n_max, double tol) {
    QuadratureRule rule = build_quadrature(p, n_max, std::min(tol, 1e-13));
    StieltjesResult a = stieltjes_on_rule(rule, n_max, true);

    // Node-doubling validation.
    QuadratureRule rule2 = rule;
    {
        QuadratureRule dense;
        dense.target_tol = rule.target_tol;
        dense.L = rule.L;
        dense.log_weight_scale = rule.log_weight_scale;
        const GaussLegendre& gl = gl16();
        const int panels = 2 * static_cast<int>(rule.nodes.size() / gl.x.size());
        const double h = 2.0 * rule.L / panels;
        const double vmin = p.potential_min();
        for (int j = 0; j < panels; ++j) {
            const double c = -rule.L + (j + 0.5) * h;
            for (size_t i = 0; i < gl.x.size(); ++i) {
                const double x = c + 0.5 * h * gl.x[i];
                dense.nodes.push_back(x);
                dense.weights.push_back(0.5 * h * gl.w[i]);
                dense.half_weight.push_back(std::exp(-0.5 * p.N * (p.potential(x) - vmin)));
            }
        }
        rule2 = std::move(dense);
    }
    StieltjesResult b = stieltjes_on_rule(rule2, n_max, false);
    double drift = 0.0;
    for (int n = 1; n <= n_max; ++n) drift = std::max(drift, std::abs(a.R[n] - b.R[n]));
    if (drift > std::max(tol, 1e-12)) {
        std::ostringstream msg;
        msg << "stieltjes_recurrence: node-doubling drift " << drift << " exceeds tol "
            << tol;
        throw std::runtime_error(msg.str());
    }

    // Orthogonality audit on the generated basis.
    const int k = std::min(n_max, 20);
    double offdiag = 0.0;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j < i; ++j)
            offdiag = std::max(offdiag, std::abs(dot(a.basis[i], a.basis[j])));
    if (offdiag > 1e-8)
        throw std::runtime_error("stieltjes_recurrence: loss of orthogonality");

    RecurrenceData rec;
    rec.params = p;
    rec.R.assign(n_max + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) rec.R[n] = b.R[n];
    rec.log_h.assign(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n)
        rec.log_h[n] = b.log_h_scaled[n] + rule.log_weight_scale;
    return rec;
}

PsiEvaluator::PsiEvaluator(ModelParams p, RecurrenceData rec, QuadratureRule rule)
    : params_(p), rec_(std::move(rec)), rule_(std::move(rule)) {
    log_h0_ = rec_.log_h.at(0);
}

std::complex<double> PsiEvaluator::psi(int n, std::complex<double> z) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("psi: n outside recurrence data");
    // psi_0 = exp(-N V/2)/sqrt(h_0); carry a log prefactor against overflow.
    const cplx z2 = z * z;
    const cplx v = 0.5 * params_.t * z2 + 0.25 * params_.g * z2 * z2;
    const cplx expo = -0.5 * static_cast<double>(params_.N) * v - 0.5 * log_h0_;
    double log_scale = expo.real();
    cplx cur = std::exp(cplx(0.0, expo.imag()));
    if (n == 0) return cur * std::exp(log_scale);
    cplx prev = cur;
    cur = z * prev / std::sqrt(rec_.R[1]);
    for (int k = 1; k < n; ++k) {
        cplx next = (z * cur - std::sqrt(rec_.R[k]) * prev) / std::sqrt(rec_.R[k + 1]);
        prev = cur;
        cur = next;
        const double m = std::max(std::abs(cur), std::abs(prev));
        if (m > 1e150) {
            prev /= m;
            cur /= m;
            log_scale += std::log(m);
        } else if (m < 1e-150 && m > 0.0) {
            prev /= m;
            cur /= m;
            log_scale += std::log(m);
        }
    }
    return cur * std::exp(log_scale);
}

ScaledPsiPair PsiEvaluator::psi_pair_scaled(int n, double z) const {
    if (n < 1 || n > n_max())
        throw std::out_of_range("psi_pair_scaled: need 1 <= n <= n_max");
    double log_scale = -0.5 * params_.N * (params_.potential(z)) - 0.5 * log_h0_;
    double prev = 1.0;  // psi_0 / exp(log_scale)
    double cur = z / std::sqrt(rec_.R[1]);
    for (int k = 1; k < n; ++k) {
        const double next =
            (z * cur - std::sqrt(rec_.R[k]) * prev) / std::sqrt(rec_.R[k + 1]);
        prev = cur;
        cur = next;
        const double m = std::max(std::abs(cur), std::abs(prev));
        if (m > 1e100 || (m < 1e-100 && m > 0.0)) {
            prev /= m;
            cur /= m;
            log_scale += std::log(m);
        }
    }
    return {cur, prev, log_scale};
}

void PsiEvaluator::psi_with_deriv(int n, double z, double& f, double& fp) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("psi_with_deriv: n out of range");
    const double w0 = std::exp(-0.5 * params_.N * params_.potential(z) - 0.5 * log_h0_);
    double cur = w0;
    double curp = -0.5 * params_.N * params_.potential_deriv(z) * w0;
    if (n == 0) {
        f = cur;
        fp = curp;
        return;
    }
    double prev = cur, prevp = curp;
    const double r1 = std::sqrt(rec_.R[1]);
    cur = z * prev / r1;
    curp = (prev + z * prevp) / r1;
    for (int k = 1; k < n; ++k) {
        const double rk = std::sqrt(rec_.R[k]), rk1 = std::sqrt(rec_.R[k + 1]);
        const double next = (z * cur - rk * prev) / rk1;
        const double nextp = (cur + z * curp - rk * prevp) / rk1;
        prev = cur;
        prevp = curp;
        cur = next;
        curp = nextp;
    }
    f = cur;
    fp = curp;
}

double PsiEvaluator::cd_kernel(int N_level, double z, double w) const {
    if (N_level < 1 || N_level > n_max())
        throw std::out_of_range("cd_kernel: N_level out of range");
    const double rn = std::sqrt(rec_.R[N_level]);
    if (std::abs(z - w) < 1e-6) {
        const double mid = 0.5 * (z + w);
        double fN, fNp, fM, fMp;
        psi_with_deriv(N_level, mid, fN, fNp);
        psi_with_deriv(N_level - 1, mid, fM, fMp);
        return rn * (fNp * fM - fMp * fN);
    }
    const ScaledPsiPair a = psi_pair_scaled(N_level, z);
    const ScaledPsiPair b = psi_pair_scaled(N_level, w);
    const double s = std::exp(a.log_scale + b.log_scale);
    return rn * s * (a.v_n * b.v_nm1 - a.v_nm1 * b.v_n) / (z - w);
}

double PsiEvaluator::kernel_direct_sum(int N_level, double z, double w) const {
    double sum = 0.0;
    for (int k = 0; k < N_level; ++k)
        sum += psi(k, z).real() * psi(k, w).real();
    return sum;
}

double PsiEvaluator::correlation(int N_level, const std::vector<double>& points) const {
    const size_t m = points.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (std::abs(points[i] - points[j]) <= 1e-9)
                throw std::invalid_argument(
                    "correlation: coincident points; use the diagonal kernel limit");
    std::vector<double> a(m * m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            a[i * m + j] = cd_kernel(N_level, points[i], points[j]);
    // In-place LU determinant with partial pivoting.
    double det = 1.0;
    for (size_t c = 0; c < m; ++c) {
        size_t piv = c;
        for (size_t r = c + 1; r < m; ++r)
            if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
        if (piv != c) {
            for (size_t j = 0; j < m; ++j) std::swap(a[c * m + j], a[piv * m + j]);
            det = -det;
        }
        const double p = a[c * m + c];
        if (p == 0.0) return 0.0;
        det *= p;
        for (size_t r = c + 1; r < m; ++r) {
            const double f = a[r * m + c] / p;
            for (size_t j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
        }
    }
    return det;
}

double PsiEvaluator::orthonormality_defect(int k) const {
    k = std::min(k, n_max());
    std::vector<std::vector<double>> psis(k + 1);
    for (int n = 0; n <= k; ++n) {
        psis[n].resize(rule_.nodes.size());
        for (size_t i = 0; i < rule_.nodes.size(); ++i) {
            // real-axis recurrence without scale tracking; safe at small k
            psis[n][i] = psi(n, rule_.nodes[i]).real();
        }
    }
    double worst = 0.0;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= i; ++j) {
            accum_t s = 0;
            for (size_t q = 0; q < rule_.nodes.size(); ++q)
                s += static_cast<accum_t>(rule_.weights[q]) * psis[i][q] * psis[j][q];
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(static_cast<double>(s) - target));
        }
    return worst;
}

double PsiEvaluator::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (size_t i = 0; i < rule_.nodes.size(); ++i) s += rule_.weights[i] * f(rule_.nodes[i]);
    return s;
}

CMat2 lax_A(const ModelParams& p, const std::vector<double>& R, int n, cplx z) {
    const double g = p.g, t = p.t;
    const cplx diag = 0.5 * t * z + 0.5 * g * z * z * z + g * z * R[n];
    const double sr = std::sqrt(R[n]);
    CMat2 A;
    A.m11 = -diag;
    A.m12 = sr * (t + g * z * z + g * R[n] + g * R[n + 1]);
    A.m21 = -sr * (t + g * z * z + g * R[n - 1] + g * R[n]);
    A.m22 = diag;
    return A;
}

Mat2 lax_A_real(const ModelParams& p, const std::vector<double>& R, int n, double z) {
    const CMat2 A = lax_A(p, R, n, cplx(z, 0.0));
    return {A.m11.real(), A.m12.real(), A.m21.real(), A.m22.real()};
}

CMat2 lax_U(const std::vector<double>& R, int n, cplx z) {
    CMat2 U;
    const double s = std::sqrt(R[n + 1]);
    U.m11 = z / s;
    U.m12 = -std::sqrt(R[n]) / s;
    U.m21 = 1.0;
    U.m22 = 0.0;
    return U;
}

LaxResiduals lax_residuals_for(const ModelParams& p, const std::vector<double>& R,
                               const PsiEvaluator& ev, int n,
                               const std::vector<cplx>& z_grid) {
    if (n < 1) throw std::invalid_argument("lax_residuals: n >= 1");
    LaxResiduals out;
    const double Nd = p.N;
    for (cplx z : z_grid) {
        const double scale = std::max(1.0, std::abs(z));
        const double h = 1e-4 * scale;
        // 5-point stencil for U'(z) entrywise.
        CMat2 d{};
        {
            const CMat2 a = lax_U(R, n, z - 2.0 * h);
            const CMat2 b = lax_U(R, n, z - h);
            const CMat2 c = lax_U(R, n, z + h);
            const CMat2 e = lax_U(R, n, z + 2.0 * h);
            d.m11 = (a.m11 - 8.0 * b.m11 + 8.0 * c.m11 - e.m11) / (12.0 * h);
            d.m12 = (a.m12 - 8.0 * b.m12 + 8.0 * c.m12 - e.m12) / (12.0 * h);
            d.m21 = (a.m21 - 8.0 * b.m21 + 8.0 * c.m21 - e.m21) / (12.0 * h);
            d.m22 = (a.m22 - 8.0 * b.m22 + 8.0 * c.m22 - e.m22) / (12.0 * h);
        }
        const CMat2 U = lax_U(R, n, z);
        const CMat2 An = lax_A(p, R, n, z);
        const CMat2 An1 = lax_A(p, R, n + 1, z);
        CMat2 rhs = An1 * U - U * An;
        rhs.m11 *= Nd;
        rhs.m12 *= Nd;
        rhs.m21 *= Nd;
        rhs.m22 *= Nd;
        out.compatibility = std::max(out.compatibility, (d - rhs).max_abs());

        // psi-vector system residual.
        cplx pn[5], pm[5];
        for (int k = -2; k <= 2; ++k) {
            pn[k + 2] = ev.psi(n, z + static_cast<double>(k) * h);
            pm[k + 2] = ev.psi(n - 1, z + static_cast<double>(k) * h);
        }
        const cplx dn = (pn[0] - 8.0 * pn[1] + 8.0 * pn[3] - pn[4]) / (12.0 * h);
        const cplx dm = (pm[0] - 8.0 * pm[1] + 8.0 * pm[3] - pm[4]) / (12.0 * h);
        const cplx rn = dn - Nd * (An.m11 * pn[2] + An.m12 * pm[2]);
        const cplx rm = dm - Nd * (An.m21 * pn[2] + An.m22 * pm[2]);
        const double loc = std::max(std::abs(rn), std::abs(rm));
        out.psi_system = std::max(out.psi_system, loc);
    }
    return out;
}

LaxResiduals lax_residuals(const PsiEvaluator& ev, int n,
                           const std::vector<cplx>& z_grid) {
    return lax_residuals_for(ev.params(), ev.recurrence().R, ev, n, z_grid);
}

}  // namespace quartic
