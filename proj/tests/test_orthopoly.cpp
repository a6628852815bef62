#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "quartic/freud.hpp"
#include "quartic/orthopoly.hpp"
#include "test_util.hpp"

using namespace quartic;

namespace {

const PsiEvaluator& ev40() {
    static const ModelParams p(-1.0, 1.0, 40);
    static const PsiEvaluator ev(p, stieltjes_recurrence(p, 44, 1e-11),
                                 build_quadrature(p, 44, 1e-13));
    return ev;
}

}  // namespace

TEST_CASE("stieltjes: gamma-ratio oracle at t = 0") {
    const ModelParams p(0.0, 1.0, 4);  // N g / 4 = 1
    const RecurrenceData rec = stieltjes_recurrence(p, 6, 1e-12);
    const double oracle = std::tgamma(0.75) / std::tgamma(0.25);
    CHECK(rec.R[1] == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(rec.R[1] == doctest::Approx(0.337989).epsilon(1e-6));
}

TEST_CASE("stieltjes: R_n bound and log_h consistency") {
    const RecurrenceData& rec = ev40().recurrence();
    const ModelParams& p = ev40().params();
    for (int n = 1; n <= 44; ++n) {
        CHECK(rec.R[n] > 0.0);
        CHECK(rec.R[n] < r_bound(p, n));
        CHECK(std::exp(rec.log_h[n] - rec.log_h[n - 1]) ==
              doctest::Approx(rec.R[n]).epsilon(1e-12));
    }
}

TEST_CASE("psi: parity, orthonormality, psi_0(0)") {
    const PsiEvaluator& ev = ev40();
    const cplx z(0.37, 0.2);
    for (int n = 0; n <= 20; ++n) {
        const cplx a = ev.psi(n, -z);
        const cplx b = ev.psi(n, z);
        const cplx want = (n % 2) ? -b : b;
        CHECK(std::abs(a - want) <= 1e-12 * std::abs(b));
    }
    CHECK(ev.orthonormality_defect(20) <= 1e-9);

    // psi_0(0) = (int e^{-NV})^{-1/2}
    const double h0 = std::exp(ev.recurrence().log_h[0]);
    CHECK(ev.psi(0, 0.0).real() == doctest::Approx(1.0 / std::sqrt(h0)).epsilon(1e-12));
}

TEST_CASE("psi: scaled pair matches the plain evaluation") {
    const PsiEvaluator& ev = ev40();
    for (double z : {0.1, 0.9, 1.7, 2.5}) {
        const ScaledPsiPair s = ev.psi_pair_scaled(12, z);
        const double f = std::exp(s.log_scale);
        CHECK(s.v_n * f == doctest::Approx(ev.psi(12, z).real()).epsilon(1e-11));
        CHECK(s.v_nm1 * f == doctest::Approx(ev.psi(11, z).real()).epsilon(1e-11));
    }
}

TEST_CASE("cd kernel: trace, projection, symmetry") {
    const PsiEvaluator& ev = ev40();
    const int NL = 40;
    const double trace = ev.integrate([&](double x) { return ev.cd_kernel(NL, x, x); });
    CHECK(std::abs(trace - NL) <= 1e-8);

    for (auto [x, z] : {std::pair{0.3, 0.8}, std::pair{-1.2, 0.4}}) {
        const double proj =
            ev.integrate([&](double u) { return ev.cd_kernel(NL, x, u) * ev.cd_kernel(NL, u, z); });
        CHECK(std::abs(proj - ev.cd_kernel(NL, x, z)) <= 1e-8);
    }
    CHECK(ev.cd_kernel(NL, 0.3, 0.9) == doctest::Approx(ev.cd_kernel(NL, 0.9, 0.3)));
}

TEST_CASE("cd kernel: confluent switch is consistent") {
    const PsiEvaluator& ev = ev40();
    const double z = 0.47;
    const double diag = ev.cd_kernel(40, z, z);
    // just above the 1e-6 confluent switch; curvature is O(d^2 omega^2)
    const double near = ev.cd_kernel(40, z - 1e-6, z + 1e-6);
    CHECK(std::abs(near - diag) <= 1e-6 * std::abs(diag));
}

TEST_CASE("correlation: determinant structure") {
    const PsiEvaluator& ev = ev40();
    // m = 1 reduces to the kernel diagonal
    CHECK(ev.correlation(40, {0.3}) == doctest::Approx(ev.cd_kernel(40, 0.3, 0.3)));
    // m = 2 against the direct partial-sum oracle (pre-Christoffel-Darboux)
    const double z1 = 0.3, z2 = 0.5;
    const double det_cd = ev.correlation(40, {z1, z2});
    const double k11 = ev.kernel_direct_sum(40, z1, z1);
    const double k12 = ev.kernel_direct_sum(40, z1, z2);
    const double k22 = ev.kernel_direct_sum(40, z2, z2);
    CHECK(det_cd == doctest::Approx(k11 * k22 - k12 * k12).epsilon(1e-9));
    // repulsion: confluent-limit determinant collapses
    const double tight = ev.correlation(40, {0.3, 0.3 + 2e-6});
    const double scale = ev.cd_kernel(40, 0.3, 0.3);
    CHECK(std::abs(tight) <= 1e-8 * scale * scale);
    CHECK_THROWS_AS(ev.correlation(40, {0.3, 0.3 + 1e-10}), std::invalid_argument);
}

TEST_CASE("lax residuals: oracle data, perturbation, fixed point") {
    const PsiEvaluator& ev = ev40();
    std::vector<cplx> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(cplx(-1.8 + 0.4 * i, (i % 2) ? 0.3 : -0.25));

    const LaxResiduals base = lax_residuals(ev, 20, grid);
    CHECK(base.compatibility <= 1e-6 * ev.params().N);

    std::vector<double> Rp = ev.recurrence().R;
    Rp[20] += 1e-3;
    const LaxResiduals pert = lax_residuals_for(ev.params(), Rp, ev, 20, grid);
    CHECK(pert.compatibility >= 100.0 * std::max(base.compatibility, 1e-10));
    CHECK(pert.compatibility <= 1.0);  // linear sensitivity, not a blow-up

    // Constant fixed-point data: the string-equation content of the
    // compatibility relation lives
    // in the off-diagonal entries, which vanish at machine precision; the
    // (1,1) entry keeps the exact n-variation term U'_{11} = 1/sqrt(R).
    const FixedPoints fp = fixed_points(ev.params(), 0.5);
    std::vector<double> Rc(44, fp.branch_R);
    for (cplx z : grid) {
        const CMat2 U = lax_U(Rc, 20, z);
        const CMat2 An = lax_A(ev.params(), Rc, 20, z);
        const CMat2 An1 = lax_A(ev.params(), Rc, 21, z);
        const CMat2 rhs = An1 * U - U * An;
        const double N = ev.params().N;
        // string content sits in the off-diagonals: identically zero here
        CHECK(std::abs(rhs.m12) * N <= 1e-10);
        CHECK(std::abs(rhs.m21) * N <= 1e-10);
        CHECK(std::abs(rhs.m11) * N <= 1e-10);
        CHECK(std::abs(rhs.m22) * N <= 1e-10);
        // so the full (1,1) residual is exactly the n-variation term U'_{11}
        const double resid11 = std::abs(1.0 / std::sqrt(fp.branch_R) - N * rhs.m11.real());
        CHECK(resid11 == doctest::Approx(1.0 / std::sqrt(fp.branch_R)).epsilon(1e-10));
    }
}

TEST_CASE("psi-system residual is stencil-limited on the real axis") {
    const PsiEvaluator& ev = ev40();
    std::vector<cplx> grid;
    for (int i = 0; i < 6; ++i) grid.push_back(cplx(-1.5 + 0.6 * i, 0.0));
    const LaxResiduals r = lax_residuals(ev, 10, grid);
    CHECK(r.psi_system <= 1e-5);
}
