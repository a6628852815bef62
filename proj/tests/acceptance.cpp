// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "quartic/freud.hpp"
#include "quartic/kernels.hpp"
#include "quartic/model.hpp"
#include "quartic/orthopoly.hpp"
#include "quartic/painleve2.hpp"
#include "quartic/psi_cp.hpp"
#include "quartic/semiclassics.hpp"

using namespace quartic;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report(int criterion, bool ok, const char* fmt, ...) {
    std::printf("[criterion %2d] %s  ", criterion, ok ? "PASS" : "FAIL");
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

const HMGrid& hm() {
    static const HMGrid grid = solve_hastings_mcleod(-10.0, 8.0, 2800, 1e-12);
    return grid;
}

// 1. Oracle equivalence of the two independent recurrence routes.
void criterion_1() {
    Timer t;
    const ModelParams p(-1.0, 1.0, 40);
    const RecurrenceData rec = stieltjes_recurrence(p, 60, 1e-11);
    const Trajectory tr = variational_solve(p, 60, 1e-11);
    double worst = 0.0;
    for (int n = 1; n <= 60; ++n) worst = std::max(worst, std::abs(rec.R[n] - tr.R[n]));
    const double secs = t.seconds();
    report(1, worst <= 1e-8 && secs < 30.0,
           "variational vs Stieltjes max|dR| = %.2e (<= 1e-8), %.1f s (< 30 s)", worst,
           secs);
}

// 2. Fig. 3 branch structure at t=-1, g=1, N=400.
void criterion_2() {
    Timer t;
    const ModelParams p(-1.0, 1.0, 400);
    const Trajectory tr = variational_solve(p, 200, 1e-10);
    // visible split = |R_{n+1} - R_n| relative to the local mean
    auto split = [&](int n) {
        return std::abs(tr.R[n + 1] - tr.R[n]) /
               (0.5 * (tr.R[n + 1] + tr.R[n]));
    };
    bool two_branch_low = true;
    for (int n = 5; n <= 90; ++n) two_branch_low = two_branch_low && split(n) > 0.01;
    int n_one = -1;
    for (int n = 95; n <= 199; ++n) {
        bool merged = true;
        for (int m = n; m <= 198; ++m) merged = merged && split(m) < 0.01;
        if (merged) {
            n_one = n;
            break;
        }
    }
    const double mid = 0.5 * (90.0 + n_one);
    const double secs = t.seconds();
    const bool ok = two_branch_low && n_one > 0 && n_one <= 120 && mid >= 95.0 &&
                    mid <= 105.0 && secs < 120.0;
    report(2, ok,
           "two branches through n=90, single branch from n=%d, merge center %.1f "
           "(in [95,105]), %.1f s (< 2 min)",
           n_one, mid, secs);
}

// 3. Double-scaling ansatz rate.
void criterion_3() {
    std::vector<double> Ns, errs;
    double worst_scaled = 0.0;
    for (int N : {100, 200, 400, 800}) {
        const ModelParams p(-1.0, 1.0, N);
        const DerivedConstants dc = derive_constants(p);
        const double halfwin = 2.0 * dc.c0() * std::cbrt(static_cast<double>(N));
        const int lo = static_cast<int>(std::floor(0.25 * N - halfwin));
        const int hi = static_cast<int>(std::ceil(0.25 * N + halfwin));
        const Trajectory tr = variational_solve(p, hi + 2, 1e-11);
        double worst = 0.0;
        for (int n = lo; n <= hi; ++n)
            worst = std::max(worst, std::abs(tr.R[n] - ansatz_R(p, n, hm())));
        Ns.push_back(N);
        errs.push_back(worst);
        worst_scaled = std::max(worst_scaled, worst * N);
    }
    const double expo = -fit_loglog_slope(Ns, errs);
    report(3, expo >= 0.9 && worst_scaled <= 1.0,
           "|R - R0| fitted exponent %.2f (>= 0.9), max N*err = %.3f (bounded)", expo,
           worst_scaled);
}

// 4. Hastings-McLeod contracts.
void criterion_4() {
    Timer t;
    const HMGrid& g = hm();
    const double resid = hm_max_collocation_residual(g);
    const HMGrid fine = solve_hastings_mcleod(-10.0, 8.0, 5600, 1e-12);
    const double du0 = std::abs(g.u_at(0.0) - fine.u_at(0.0));
    double ai5, aip5;
    airy_real(5.0, ai5, aip5);
    const double right = g.u_at(5.0) / ai5;
    const double left = g.u_at(-6.0) / std::sqrt(3.0);
    bool d_ok = true;
    double d_worst = 0.0;
    for (size_t i = 0; i < g.D.size(); ++i) d_ok = d_ok && g.D[i] > 0.0;
    for (double y = -9.5; y <= 7.5; y += 0.23) {
        const double alg =
            0.25 * (y * y - g.v_at(y) * g.v_at(y)) + g.up_at(y) * g.up_at(y);
        d_worst = std::max(d_worst, std::abs(alg - g.D_at(y)));
    }
    const double secs = t.seconds();
    const bool ok = resid <= 1e-10 && du0 <= 1e-7 && right >= 0.9999 &&
                    right <= 1.0001 && left >= 1.0 - 3e-3 && left <= 1.0 && d_ok &&
                    d_worst <= 1e-7 && secs < 20.0;
    report(4, ok,
           "residual %.1e (<= 1e-10), u(0) mesh stability %.1e (<= 1e-7), u(5)/Ai(5) = "
           "%.6f, u(-6)/sqrt3 = %.6f, D identity %.1e (<= 1e-7), %.1f s (< 20 s)",
           resid, du0, right, left, d_worst, secs);
}

// 5. Turning-point proposition.
void criterion_5() {
    const HMGrid& g = hm();
    const double y0 = find_y0(g);
    int changes = 0;
    for (size_t i = 1; i < g.q.size(); ++i)
        if ((g.q[i - 1] < 0.0) != (g.q[i] < 0.0)) ++changes;
    const bool sign_flip = turning_points(g, y0 - 0.2).s2_sq > 0.0 &&
                           turning_points(g, y0 + 0.2).s2_sq < 0.0;
    const TurningPoints tp10 = turning_points(g, -10.0);
    const double e2 = std::abs(tp10.s2_sq - 5.0) / 5.0;
    const double e1 = std::abs(tp10.s1_sq + 1.0 / 1600.0) / (1.0 / 1600.0);
    const bool ok = y0 > 0.0 && changes == 1 && sign_flip && e2 <= 0.05 && e1 <= 0.25;
    report(5, ok,
           "y0 = %.5f unique, s2^2 flips sign; at y=-10: s2^2 off by %.1f%% (<= 5%%), "
           "s1^2 off by %.1f%% (<= 25%%)",
           y0, 100.0 * e2, 100.0 * e1);
}

// 6. Critical-point Psi system.
void criterion_6() {
    const PhiSolution phi = solve_phi(hm(), 0.4, 0, 12.0, 0);
    double parity = 0.0;
    for (double z = 0.3; z <= 10.0; z += 0.41) {
        const Vec2 a = phi.eval(-z), b = phi.eval(z);
        parity = std::max(parity, std::max(std::abs(a.a - b.a), std::abs(a.b + b.b)));
    }
    double drift = 0.0;
    const double w0 = phi.phi1[0] * phi.p2[0] - phi.phi2[0] * phi.p1[0];
    for (size_t i = 0; i < phi.z_grid.size(); i += 23) {
        const double w = phi.phi1[i] * phi.p2[i] - phi.phi2[i] * phi.p1[i];
        drift = std::max(drift, std::abs(w - w0));
    }
    const double h = 1e-3;
    const PhiSolution sp = solve_phi(hm(), 0.4 + h, 0, 12.0, 0);
    const PhiSolution sm = solve_phi(hm(), 0.4 - h, 0, 12.0, 0);
    double ydef = 0.0;
    for (double z = -2.0; z <= 2.0; z += 0.4) {
        const Vec2 fp = sp.eval(z), fm = sm.eval(z), f0 = phi.eval(z);
        const Mat2 B = cp_matrix_B(z, 0.4, 0, hm());
        ydef = std::max(ydef, std::abs((fp.a - fm.a) / (2.0 * h) -
                                       (B.m11 * f0.a + B.m12 * f0.b)));
        ydef = std::max(ydef, std::abs((fp.b - fm.b) / (2.0 * h) -
                                       (B.m21 * f0.a + B.m22 * f0.b)));
    }
    const bool ok =
        phi.mismatch <= 1e-3 && parity <= 1e-3 && drift <= 1e-8 && ydef <= 1e-4;
    report(6, ok,
           "mismatch %.1e (<= 1e-3), parity defect %.1e (<= 1e-3), Wronskian drift "
           "%.1e (<= 1e-8), y-derivative defect %.1e (<= 1e-4)",
           phi.mismatch, parity, drift, ydef);
}

// 7. Lax compatibility with quadrature-oracle coefficients.
void criterion_7() {
    const ModelParams p(-1.0, 1.0, 40);
    const RecurrenceData rec = stieltjes_recurrence(p, 44, 1e-11);
    const QuadratureRule rule = build_quadrature(p, 44, 1e-13);
    const PsiEvaluator ev(p, rec, rule);
    std::vector<cplx> grid;
    for (int i = 0; i < 10; ++i)
        grid.push_back(cplx(-1.8 + 0.4 * i, (i % 2) ? 0.3 : -0.25));
    double worst = 0.0;
    for (int n : {5, 20, 35})
        worst = std::max(worst, lax_residuals(ev, n, grid).compatibility);
    report(7, worst <= 1e-6 * p.N,
           "compatibility residual %.2e (<= 1e-6 N = %.0e) on a 10-point complex grid",
           worst, 1e-6 * p.N);
}

// 8. Semiclassical validation rates.
void criterion_8() {
    Timer t;
    const ModelParams base(-1.0, 1.0, 100);
    const CompareReport rep =
        compare_harness(base, {100, 200, 400, 800}, {-2, -1, 0, 1, 2},
                        {"exterior", "bulk", "tp", "critical"}, hm());
    double ext = 0, blk = 0, tp = 0, crit = 0;
    for (const auto& [region, rate] : rep.fitted_rates) {
        if (region == "exterior") ext = rate;
        if (region == "bulk") blk = rate;
        if (region == "tp") tp = rate;
        if (region == "critical") crit = rate;
    }
    const double secs = t.seconds();
    const bool ok =
        ext >= 0.9 && blk >= 0.9 && tp >= 0.9 && crit >= 0.25 && secs < 600.0;
    report(8, ok,
           "fitted exponents: exterior %.2f, bulk %.2f, tp %.2f (all >= 0.9), "
           "critical %.2f (>= 0.25), %.0f s (< 10 min)",
           ext, blk, tp, crit, secs);
}

// 9. h_n asymptotics.
void criterion_9() {
    double worst = 0.0, first = 0.0, last = 0.0;
    for (int N : {40, 80, 140, 200}) {
        const ModelParams p(-1.0, 1.0, N);
        const int n = N / 4;
        const RecurrenceData rec = stieltjes_recurrence(p, n + 2, 1e-11);
        const WkbData wkb(p, n, hm());
        const double diff = std::abs(rec.log_h[n] - wkb.hn_asymptotic());
        if (N == 40) first = diff;
        if (N == 200) last = diff;
        worst = std::max(worst, diff);
    }
    const bool ok = worst <= 2.0 && last <= first + 0.5;
    report(9, ok,
           "|log h_n - 2N int mu| max %.3f over N in {40..200} (bounded, non-growing: "
           "first %.3f, last %.3f)",
           worst, first, last);
}

// 10. Theorem 1.3 at desk scale.
void criterion_10() {
    Timer t;
    std::vector<double> offs;
    for (double u = -2.0; u <= 2.01; u += 0.5) offs.push_back(u);

    // bulk: one-cut family member (t = -1), window center z0/2 = 0.707
    const ScalingReport rb = scaling_limit_check(
        ScalingRegime::Bulk, ModelParams(-1.0, 1.0, 200), 0.0, offs, hm(), nullptr);
    const double t_bulk = t.seconds();

    Timer te;
    const ScalingReport re100 =
        scaling_limit_check(ScalingRegime::Edge, ModelParams(critical_t_shift(1.0, 0.0, 100), 1.0, 100),
                            0.0, offs, hm(), nullptr);
    const ScalingReport re200 =
        scaling_limit_check(ScalingRegime::Edge, ModelParams(critical_t_shift(1.0, 0.0, 200), 1.0, 200),
                            0.0, offs, hm(), nullptr);
    const double t_edge = te.seconds();

    Timer tc;
    const PhiSolution phi = solve_phi(hm(), 0.0, 0, 12.0, 0);
    const ScalingReport rc100 =
        scaling_limit_check(ScalingRegime::Critical, ModelParams(critical_t_shift(1.0, 0.0, 100), 1.0, 100),
                            0.0, offs, hm(), &phi);
    const ScalingReport rc400 =
        scaling_limit_check(ScalingRegime::Critical, ModelParams(critical_t_shift(1.0, 0.0, 400), 1.0, 400),
                            0.0, offs, hm(), &phi);
    const double t_crit = tc.seconds();

    const bool ok = rb.sup_error <= 0.05 && re200.sup_error < re100.sup_error &&
                    rc100.sup_error / rc400.sup_error >= 1.2 && t_bulk < 300.0 &&
                    t_edge < 300.0 && t_crit < 300.0;
    report(10, ok,
           "bulk %.4f (<= 0.05 at N=200), edge %.4f -> %.4f (decreasing), critical "
           "%.4f -> %.4f (ratio %.2f >= 1.2); %.0f/%.0f/%.0f s per regime (< 5 min)",
           rb.sup_error, re100.sup_error, re200.sup_error, rc100.sup_error,
           rc400.sup_error, rc100.sup_error / rc400.sup_error, t_bulk, t_edge, t_crit);
}

// 11. Kernel identities.
void criterion_11() {
    const ModelParams p(-1.0, 1.0, 40);
    const RecurrenceData rec = stieltjes_recurrence(p, 44, 1e-11);
    const QuadratureRule rule = build_quadrature(p, 44, 1e-13);
    const PsiEvaluator ev(p, rec, rule);
    const double trace =
        std::abs(ev.integrate([&](double x) { return ev.cd_kernel(40, x, x); }) - 40.0);
    double proj = 0.0;
    for (auto [x, z] : {std::pair{0.3, 0.8}, std::pair{-1.1, 0.2}}) {
        const double lhs = ev.integrate(
            [&](double u) { return ev.cd_kernel(40, x, u) * ev.cd_kernel(40, u, z); });
        proj = std::max(proj, std::abs(lhs - ev.cd_kernel(40, x, z)));
    }
    // limit kernels: symmetry and two-sided diagonal consistency
    double sym = 0.0, diag = 0.0;
    const PhiSolution phi = solve_phi(hm(), 0.3, 0, 12.0, 0);
    for (double u : {-0.9, 0.1, 1.3}) {
        sym = std::max(sym, std::abs(sine_kernel(u, 0.4) - sine_kernel(0.4, u)));
        sym = std::max(sym, std::abs(airy_kernel(u, 0.4) - airy_kernel(0.4, u)));
        sym = std::max(sym, std::abs(critical_kernel(phi, u, 0.4) -
                                     critical_kernel(phi, 0.4, u)));
        diag = std::max(diag, std::abs(sine_kernel(u - 5e-5, u + 5e-5) -
                                       sine_kernel(u, u)));
        diag = std::max(diag, std::abs(airy_kernel(u - 5e-5, u + 5e-5) -
                                       airy_kernel(u, u)) /
                                  std::max(1.0, std::abs(airy_kernel(u, u))));
        diag = std::max(diag, std::abs(critical_kernel(phi, u - 5e-5, u + 5e-5) -
                                       critical_kernel(phi, u, u)) /
                                  std::max(1.0, std::abs(critical_kernel(phi, u, u))));
    }
    const bool ok = trace <= 1e-8 && proj <= 1e-8 && sym <= 1e-12 && diag <= 1e-6;
    report(11, ok,
           "trace defect %.1e (<= 1e-8), projection defect %.1e (<= 1e-8), symmetry "
           "%.1e, diagonal consistency %.1e (<= 1e-6)",
           trace, proj, sym, diag);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures == 0)
        std::printf("acceptance: all criteria PASS\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
